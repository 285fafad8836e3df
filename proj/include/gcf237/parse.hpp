#pragma once

#include <optional>
#include <string>

#include "gcf237/geometry.hpp"

namespace gcf237 {

// Parsed CLI expression: rational literals, eta, theta, + - * / ^ and
// parentheses; sqrtD when a D context is supplied; e, pi and decimal literals
// flag the value as numeric-mode.
struct ParsedValue {
  bool is_infinity = false;
  bool is_numeric = false;
  QuadVal exact;    // valid when !is_numeric && !is_infinity
  NumericPtr num;   // valid when is_numeric

  BoundaryPoint to_boundary_point() const;
};

ParsedValue parse_expression(const std::string& text, const FElem* d_context = nullptr);

Word parse_word(const std::string& text);

std::string format(const Rat& q);
std::string format(const FElem& x);
std::string format(const LElem& x);
std::string format_quad(const QuadVal& x);  // uses the sqrtD token

}  // namespace gcf237
