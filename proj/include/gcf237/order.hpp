#pragma once

#include <vector>

#include "gcf237/quaternion.hpp"

namespace gcf237 {

// The Hurwitz maximal order O = Z[eta][i, j, j'], j' = (1 + eta i + (1+eta+eta^2) j)/2,
// as a rank-12 Z-lattice in the rational coordinate space with basis
// {eta^a q : a in {0,1,2}, q in {1,i,j,k}}.  Built at startup by closing the
// Z-span of {1, i, j, j'} under multiplication by i, j, j' and scaling by eta
// until the Hermite normal form stabilizes.
class OrderLattice {
 public:
  static const OrderLattice& hurwitz();

  bool contains(const QuatElem& q) const;

  const Int& denominator() const { return den_; }
  const std::vector<std::vector<Int>>& basis() const { return rows_; }

 private:
  OrderLattice();
  std::vector<std::vector<Int>> rows_;  // 12x12, row HNF (positive pivots,
                                        // entries above a pivot reduced)
  std::vector<int> pivot_col_;
  Int den_ = 1;  // lattice = (1/den) * Z-rowspan(rows)
};

inline bool in_order(const QuatElem& q) { return OrderLattice::hurwitz().contains(q); }

}  // namespace gcf237
