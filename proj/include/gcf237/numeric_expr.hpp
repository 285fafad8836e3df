#pragma once

#include <memory>

#include "gcf237/quad.hpp"

namespace gcf237 {

// Immutable arithmetic tree over {e, pi, exact field values}; evaluated on
// demand at any precision, so numeric-mode quantities can always be refined
// from their definition instead of accumulating interval error.
struct NumericExpr;
using NumericPtr = std::shared_ptr<const NumericExpr>;

struct NumericExpr {
  enum class Op { ConstE, ConstPi, Leaf, Add, Sub, Mul, Div, Neg, Pow };
  Op op = Op::Leaf;
  QuadVal leaf;    // Op::Leaf
  long exponent = 1;  // Op::Pow
  NumericPtr a, b;

  IntervalReal eval(long prec) const;

  static NumericPtr constant_e();
  static NumericPtr constant_pi();
  static NumericPtr exact(QuadVal v);
  static NumericPtr binary(Op op, NumericPtr a, NumericPtr b);
  static NumericPtr neg(NumericPtr a);
  static NumericPtr pow(NumericPtr a, long e);
};

IntervalReal e_enclosure(long prec);
IntervalReal pi_enclosure(long prec);

}  // namespace gcf237
