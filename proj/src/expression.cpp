#include "flat/expression.hpp"

#include <cctype>
#include <sstream>

namespace flat {

ParseError::ParseError(const std::string& what, size_t pos)
    : DomainError(what + " at position " + std::to_string(pos)), position(pos) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Real parse() {
    Real v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Real expr() {
    Real v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Real term() {
    Real v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        size_t at = pos_;
        Real d = unary();
        if (d.is_zero()) throw ParseError("division by exact zero", at);
        v /= d;
      } else {
        return v;
      }
    }
  }

  Real unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }

  Real atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Real v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name != "sin" && name != "cos") throw ParseError("unknown function '" + name + "'", start);
      if (!eat('(')) throw ParseError("expected '('", pos_);
      size_t arg_at = pos_;
      Real arg = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      auto q = arg.rational_value();
      if (!q) throw ParseError("trigonometric argument must be rational", arg_at);
      return name == "sin" ? Real::sin_pi(*q) : Real::cos_pi(*q);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Real number() {
    size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    try {
      return Real(Rational::parse(s_.substr(start, pos_ - start)));
    } catch (const DomainError&) {
      throw ParseError("malformed number", start);
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Real parse_constant(std::string_view text) { return Parser(text).parse(); }

std::string to_expression(const Real& x) {
  Cyclotomic c = x.value();
  long n = c.conductor();
  std::ostringstream os;
  bool first = true;
  for (long j = 0; j < c.degree(); ++j) {
    Rational q = c.coefficient(j);
    if (q.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << "(" << q.str() << ")";
    } else {
      // Re(zeta_n^j) = cos(2j/n * pi)
      os << "(" << q.str() << ")*cos(" << Rational(2 * j, n).str() << ")";
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace flat
