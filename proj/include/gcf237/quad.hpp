#pragma once

#include <optional>

#include "gcf237/fields.hpp"
#include "gcf237/interval.hpp"

namespace gcf237 {

// Exact element u + v*sqrt(D) of the real quadratic extension L(sqrt(D)),
// D in F with D > 0 under the real embedding and sqrt(D) the positive root.
// One D is fixed per expansion session; arithmetic between different D's is
// rejected (an element with v == 0 is a plain L-value and combines with any D).
//
// The pair (u, v) need not be the unique representation when sqrt(D) happens
// to lie in L; sign() and equality compare real values, which stays correct
// in that degenerate case.
class QuadVal {
 public:
  QuadVal() : u_(), v_(), D_(1) {}
  explicit QuadVal(LElem u) : u_(std::move(u)), v_(), D_(1) {}
  QuadVal(LElem u, LElem v, FElem D) : u_(std::move(u)), v_(std::move(v)), D_(std::move(D)) {}

  static QuadVal from_F(const FElem& x) { return QuadVal(LElem::from_F(x)); }

  const LElem& u() const { return u_; }
  const LElem& v() const { return v_; }
  const FElem& D() const { return D_; }

  bool is_L() const { return v_.is_zero(); }
  bool is_zero() const { return sign() == 0; }
  // exact L-value; throws unless the sqrt part vanishes identically
  LElem to_L() const;

  QuadVal operator+(const QuadVal& o) const;
  QuadVal operator-(const QuadVal& o) const;
  QuadVal operator*(const QuadVal& o) const;
  QuadVal operator-() const;
  bool operator==(const QuadVal& o) const { return (*this - o).sign() == 0; }
  bool operator!=(const QuadVal& o) const { return !(*this == o); }

  QuadVal conj_sqrtD() const { return QuadVal(u_, -v_, D_); }  // sqrt(D) -> -sqrt(D)
  LElem norm() const;  // u^2 - v^2 D in L

  // Exact inverse.  When the norm vanishes but the value does not, sqrt(D)
  // lies in L; the value is converted to L and inverted there.
  QuadVal inv() const;

  // Exact sign under the real embedding; decided by L-signs only.
  int sign() const;

  IntervalReal eval(long prec) const;

 private:
  void check_compatible(const QuadVal& o) const;
  LElem u_, v_;
  FElem D_;
};

}  // namespace gcf237
