#include "gcf237/order.hpp"

#include <algorithm>
#include <cassert>

namespace gcf237 {

namespace {

// coordinates: index 4a + q for eta^a * {1,i,j,k}
using Vec = std::array<Rat, 12>;

Vec to_vec(const QuatElem& x) {
  Vec v{};
  const FElem* f[4] = {&x.x0, &x.x1, &x.x2, &x.x3};
  for (int q = 0; q < 4; ++q)
    for (int a = 0; a < 3; ++a) v[size_t(4 * a + q)] = (*f[q])[a];
  return v;
}

QuatElem from_vec(const Vec& v) {
  auto f = [&](int q) { return FElem(v[size_t(q)], v[size_t(4 + q)], v[size_t(8 + q)]); };
  return {f(0), f(1), f(2), f(3)};
}

// Row HNF over Z.  Rows may be linearly dependent; zero rows are dropped.
// Postcondition: pivots positive, entries above each pivot reduced into
// [0, pivot), rows sorted by pivot column.
void hnf(std::vector<std::vector<Int>>& rows) {
  size_t m = rows.size();
  if (m == 0) return;
  size_t n = rows[0].size();
  size_t r = 0;  // next pivot row slot
  for (size_t col = 0; col < n && r < m; ++col) {
    // gcd-eliminate below row r in this column
    for (size_t k = r + 1; k < m; ++k) {
      while (rows[k][col] != 0) {
        if (rows[r][col] == 0) {
          std::swap(rows[r], rows[k]);
          continue;
        }
        Int q = rows[k][col] / rows[r][col];  // truncating division is fine here
        if (q != 0)
          for (size_t j = 0; j < n; ++j) rows[k][j] -= q * rows[r][j];
        if (rows[k][col] != 0) std::swap(rows[r], rows[k]);
      }
    }
    if (rows[r][col] == 0) continue;
    if (sgn(rows[r][col]) < 0)
      for (size_t j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
    // reduce the entries above the pivot
    for (size_t k = 0; k < r; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < n; ++j) rows[k][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
}

std::vector<int> pivot_cols(const std::vector<std::vector<Int>>& rows) {
  std::vector<int> p;
  for (const auto& row : rows) {
    int c = 0;
    while (c < int(row.size()) && row[size_t(c)] == 0) ++c;
    p.push_back(c);
  }
  return p;
}

}  // namespace

OrderLattice::OrderLattice() {
  FElem eta = FElem::eta();
  QuatElem one = QuatElem::one();
  QuatElem qi{FElem(), FElem(1), FElem(), FElem()};
  QuatElem qj{FElem(), FElem(), FElem(1), FElem()};
  Rat half(1, 2);
  QuatElem jp{FElem(half), half * eta, half * (FElem(1) + eta + eta * eta), FElem()};

  std::vector<QuatElem> gens = {one, qi, qj, jp};
  std::vector<Vec> basis;
  for (const auto& g : gens) basis.push_back(to_vec(g));

  auto stabilize = [&]() {
    // common denominator, integer HNF
    Int den = 1;
    for (const auto& v : basis)
      for (const auto& x : v) den = lcm(den, x.get_den());
    std::vector<std::vector<Int>> rows;
    for (const auto& v : basis) {
      std::vector<Int> r(12);
      for (int k = 0; k < 12; ++k) {
        Rat s = v[size_t(k)] * den;
        s.canonicalize();
        assert(s.get_den() == 1);
        r[size_t(k)] = s.get_num();
      }
      rows.push_back(std::move(r));
    }
    hnf(rows);
    return std::pair(den, rows);
  };

  auto state = stabilize();
  for (int round = 0; round < 64; ++round) {
    // multiply every current basis vector by the generators and by eta
    std::vector<Vec> next = basis;
    for (const auto& v : basis) {
      QuatElem x = from_vec(v);
      for (const auto& g : {qi, qj, jp}) next.push_back(to_vec(x.mul(g)));
      next.push_back(to_vec(x.scale(eta)));
    }
    basis = std::move(next);
    // re-read the lattice from its HNF to keep the basis small
    auto st = stabilize();
    basis.clear();
    for (const auto& row : st.second) {
      Vec v{};
      for (int k = 0; k < 12; ++k) {
        v[size_t(k)] = Rat(row[size_t(k)], st.first);
        v[size_t(k)].canonicalize();
      }
      basis.push_back(v);
    }
    if (st == state) {
      rows_ = std::move(st.second);
      den_ = st.first;
      pivot_col_ = pivot_cols(rows_);
      if (rows_.size() != 12) throw std::logic_error("Hurwitz order lattice is not full rank");
      return;
    }
    state = std::move(st);
  }
  throw std::logic_error("Hurwitz order lattice closure did not stabilize");
}

const OrderLattice& OrderLattice::hurwitz() {
  static const OrderLattice lat;
  return lat;
}

bool OrderLattice::contains(const QuatElem& q) const {
  Vec v = to_vec(q);
  std::vector<Int> t(12);
  for (int k = 0; k < 12; ++k) {
    Rat s = v[size_t(k)] * den_;
    s.canonicalize();
    if (s.get_den() != 1) return false;
    t[size_t(k)] = s.get_num();
  }
  // back-substitution against the HNF rows
  for (size_t r = 0; r < rows_.size(); ++r) {
    int c = pivot_col_[r];
    if (t[size_t(c)] == 0) continue;
    Int q0, rem;
    mpz_fdiv_qr(q0.get_mpz_t(), rem.get_mpz_t(), t[size_t(c)].get_mpz_t(),
                rows_[r][size_t(c)].get_mpz_t());
    if (rem != 0) return false;
    for (int j = 0; j < 12; ++j) t[size_t(j)] -= q0 * rows_[r][size_t(j)];
  }
  for (const auto& x : t)
    if (x != 0) return false;
  return true;
}

}  // namespace gcf237
