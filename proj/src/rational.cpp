#include "flat/rational.hpp"

#include <cctype>
#include <numeric>

namespace flat {

Rational::Rational(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw DomainError("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

long Rational::num_long() const {
  if (!q_.get_num().fits_slong_p()) throw DomainError("numerator too large");
  return q_.get_num().get_si();
}

long Rational::den_long() const {
  if (!q_.get_den().fits_slong_p()) throw DomainError("denominator too large");
  return q_.get_den().get_si();
}

Rational Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(f);
}

Rational Rational::mod(const Rational& m) const {
  Rational t = *this / m;
  return *this - t.floor() * m;
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty rational");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  auto digits = [&](size_t from, size_t to) {
    if (from >= to) throw DomainError("malformed rational '" + s + "'");
    for (size_t k = from; k < to; ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw DomainError("malformed rational '" + s + "'");
    return mpz_class(s.substr(from, to - from));
  };
  Rational r;
  size_t slash = s.find('/'), dot = s.find('.');
  if (slash != std::string::npos) {
    r = Rational(digits(i, slash), digits(slash + 1, s.size()));
  } else if (dot != std::string::npos) {
    mpz_class whole = dot > i ? digits(i, dot) : mpz_class(0);
    mpz_class frac = digits(dot + 1, s.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, s.size() - dot - 1);
    r = Rational(whole * scale + frac, scale);
  } else {
    r = Rational(digits(i, s.size()));
  }
  return neg ? -r : r;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

}  // namespace flat
