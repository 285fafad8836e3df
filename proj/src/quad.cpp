#include "gcf237/quad.hpp"

namespace gcf237 {

void QuadVal::check_compatible(const QuadVal& o) const {
  if (v_.is_zero() || o.v_.is_zero()) return;
  if (D_ != o.D_) throw DomainError("mismatched sqrt(D) contexts");
}

LElem QuadVal::to_L() const {
  if (!v_.is_zero()) throw DomainError("value has a nonzero sqrt(D) part");
  return u_;
}

QuadVal QuadVal::operator+(const QuadVal& o) const {
  check_compatible(o);
  return QuadVal(u_ + o.u_, v_ + o.v_, v_.is_zero() ? o.D_ : D_);
}

QuadVal QuadVal::operator-(const QuadVal& o) const {
  check_compatible(o);
  return QuadVal(u_ - o.u_, v_ - o.v_, v_.is_zero() ? o.D_ : D_);
}

QuadVal QuadVal::operator-() const { return QuadVal(-u_, -v_, D_); }

QuadVal QuadVal::operator*(const QuadVal& o) const {
  check_compatible(o);
  const FElem& D = v_.is_zero() ? o.D_ : D_;
  LElem dl = LElem::from_F(D);
  return QuadVal(u_ * o.u_ + v_ * o.v_ * dl, u_ * o.v_ + v_ * o.u_, D);
}

LElem QuadVal::norm() const { return u_ * u_ - v_ * v_ * LElem::from_F(D_); }

QuadVal QuadVal::inv() const {
  LElem n = norm();
  if (!n.is_zero()) {
    LElem ninv = n.inv();
    return QuadVal(u_ * ninv, -(v_ * ninv), D_);
  }
  // norm 0: either the value itself is 0, or sqrt(D) = u/v in L
  int s = sign();
  if (s == 0) throw DomainError("division by zero");
  LElem r = u_ * v_.inv();  // = sqrt(D) as an exact L-value (positive)
  LElem val = u_ + v_ * r;  // = 2u
  return QuadVal(val.inv(), LElem(), D_);
}

int QuadVal::sign() const {
  int su = u_.sign();
  if (v_.is_zero()) return su;
  int sv = v_.sign();
  if (su == 0) return sv;
  if (su == sv) return su;
  // opposite; compare u^2 against v^2 D
  int d = (u_ * u_ - v_ * v_ * LElem::from_F(D_)).sign();
  return su * d;
}

IntervalReal QuadVal::eval(long prec) const {
  IntervalReal r = eval_interval(u_, prec);
  if (v_.is_zero()) return r;
  IntervalReal sd = eval_interval(LElem::from_F(D_), prec).sqrt();
  return r + eval_interval(v_, prec) * sd;
}

}  // namespace gcf237
