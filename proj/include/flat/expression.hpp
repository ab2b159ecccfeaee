#pragma once

#include <string>
#include <string_view>

#include "flat/real.hpp"

namespace flat {

struct ParseError : DomainError {
  ParseError(const std::string& what, size_t pos);
  size_t position;
};

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | atom
//   atom   := number | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
// sin(x) means sin(x*pi); x must be rational.
Real parse_constant(std::string_view text);

// Expression that parse_constant maps back to x exactly.
std::string to_expression(const Real& x);

}  // namespace flat
