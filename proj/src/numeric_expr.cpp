#include "gcf237/numeric_expr.hpp"

namespace gcf237 {

namespace {

// e = sum 1/k!; tail after N terms is below 2/(N+1)!
void e_bracket(long prec, Rat& lo, Rat& hi) {
  Rat sum(0), term(1);
  Rat eps(Int(1), Int(1) << 16);
  mpz_ui_pow_ui(eps.get_den_mpz_t(), 2, unsigned(prec + 4));
  eps.canonicalize();
  unsigned long k = 0;
  for (;;) {
    sum += term;
    ++k;
    term /= long(k);
    if (term < eps) break;
  }
  lo = sum;
  hi = sum + 2 * term;
}

// alternating series for atan(1/x), x >= 2: partial sums bracket the value
void atan_inv_bracket(unsigned long x, long prec, Rat& lo, Rat& hi) {
  Rat x2inv(Int(1), Int(x) * Int(x));
  x2inv.canonicalize();
  Rat term(Int(1), Int(x));
  term.canonicalize();
  Rat eps;
  mpz_ui_pow_ui(eps.get_den_mpz_t(), 2, unsigned(prec + 6));
  mpz_set_ui(eps.get_num_mpz_t(), 1);
  eps.canonicalize();
  Rat sum(0);
  unsigned long k = 0;
  bool plus = true;
  Rat last_plus(0), last_minus(0);
  for (;;) {
    Rat contrib = term / long(2 * k + 1);
    sum += plus ? contrib : -contrib;
    if (plus)
      last_plus = sum;
    else
      last_minus = sum;
    term *= x2inv;
    ++k;
    plus = !plus;
    if (contrib < eps && k >= 2) break;
  }
  // after a "+" term the sum is an upper bound, after a "-" a lower bound
  lo = last_minus;
  hi = last_plus;
  if (lo > hi) std::swap(lo, hi);
}

}  // namespace

IntervalReal e_enclosure(long prec) {
  Rat lo, hi;
  e_bracket(prec, lo, hi);
  return IntervalReal(lo, hi, prec);
}

IntervalReal pi_enclosure(long prec) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  Rat lo5, hi5, lo239, hi239;
  atan_inv_bracket(5, prec, lo5, hi5);
  atan_inv_bracket(239, prec, lo239, hi239);
  Rat lo = 16 * lo5 - 4 * hi239;
  Rat hi = 16 * hi5 - 4 * lo239;
  return IntervalReal(lo, hi, prec);
}

IntervalReal NumericExpr::eval(long prec) const {
  switch (op) {
    case Op::ConstE:
      return e_enclosure(prec);
    case Op::ConstPi:
      return pi_enclosure(prec);
    case Op::Leaf:
      return leaf.eval(prec);
    case Op::Add:
      return a->eval(prec) + b->eval(prec);
    case Op::Sub:
      return a->eval(prec) - b->eval(prec);
    case Op::Mul:
      return a->eval(prec) * b->eval(prec);
    case Op::Div:
      return a->eval(prec) / b->eval(prec);
    case Op::Neg:
      return -a->eval(prec);
    case Op::Pow: {
      long e = exponent;
      IntervalReal base = a->eval(prec);
      bool invert = e < 0;
      if (invert) e = -e;
      IntervalReal acc = IntervalReal::from_long(1, prec);
      for (long k = 0; k < e; ++k) acc = acc * base;
      if (invert) acc = IntervalReal::from_long(1, prec) / acc;
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

NumericPtr NumericExpr::constant_e() {
  auto n = std::make_shared<NumericExpr>();
  n->op = Op::ConstE;
  return n;
}

NumericPtr NumericExpr::constant_pi() {
  auto n = std::make_shared<NumericExpr>();
  n->op = Op::ConstPi;
  return n;
}

NumericPtr NumericExpr::exact(QuadVal v) {
  auto n = std::make_shared<NumericExpr>();
  n->op = Op::Leaf;
  n->leaf = std::move(v);
  return n;
}

NumericPtr NumericExpr::binary(Op op, NumericPtr a, NumericPtr b) {
  auto n = std::make_shared<NumericExpr>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NumericPtr NumericExpr::neg(NumericPtr a) {
  auto n = std::make_shared<NumericExpr>();
  n->op = Op::Neg;
  n->a = std::move(a);
  return n;
}

NumericPtr NumericExpr::pow(NumericPtr a, long e) {
  auto n = std::make_shared<NumericExpr>();
  n->op = Op::Pow;
  n->a = std::move(a);
  n->exponent = e;
  return n;
}

}  // namespace gcf237
