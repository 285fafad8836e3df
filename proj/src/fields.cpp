#include "gcf237/fields.hpp"

#include <vector>

#include "gcf237/interval.hpp"

namespace gcf237 {

namespace {

using Poly = std::vector<Rat>;  // coefficients, low degree first

int degree(const Poly& p) {
  for (int k = int(p.size()) - 1; k >= 0; --k)
    if (p[k] != 0) return k;
  return -1;
}

void trim(Poly& p) { p.resize(size_t(degree(p) + 1)); }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q*b + r
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  int db = degree(b);
  r = a;
  trim(r);
  q.clear();
  int dr = degree(r);
  if (dr >= db) q.resize(size_t(dr - db + 1));
  while (dr >= db) {
    Rat f = r[size_t(dr)] / b[size_t(db)];
    q[size_t(dr - db)] = f;
    for (int k = 0; k <= db; ++k) r[size_t(dr - db + k)] -= f * b[size_t(k)];
    trim(r);
    dr = degree(r);
  }
}

// inverse of p modulo the irreducible modulus m via extended Euclid
Poly inv_mod(Poly p, const Poly& m) {
  trim(p);
  if (degree(p) < 0) throw DomainError("division by zero in field arithmetic");
  // s0*orig_m + t0*p = r0 bookkeeping; we only track the p-cofactor.
  Poly r0 = m, r1 = p, t0 = {}, t1 = {Rat(1)};
  while (degree(r1) > 0) {
    Poly q, r2;
    divmod(r0, r1, q, r2);
    Poly t2 = sub(t0, mul(q, t1));
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (degree(r1) != 0) throw DomainError("element not invertible");
  Rat lead = r1[0];
  Poly inv = t1;
  for (auto& cc : inv) cc /= lead;
  Poly q, rem;
  divmod(inv, m, q, rem);
  return rem;
}

const Poly& eta_min_poly() {
  static const Poly p = {Rat(-1), Rat(-2), Rat(1), Rat(1)};  // X^3+X^2-2X-1
  return p;
}
const Poly& theta_min_poly() {
  static const Poly p = {Rat(-1), Rat(0), Rat(-2), Rat(0), Rat(1), Rat(0), Rat(1)};
  return p;  // X^6+X^4-2X^2-1
}

}  // namespace

bool FElem::is_integral() const {
  return c[0].get_den() == 1 && c[1].get_den() == 1 && c[2].get_den() == 1;
}

FElem FElem::operator+(const FElem& o) const {
  return FElem(c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]);
}
FElem FElem::operator-(const FElem& o) const {
  return FElem(c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]);
}
FElem FElem::operator-() const { return FElem(-c[0], -c[1], -c[2]); }

FElem FElem::operator*(const FElem& o) const {
  // convolution to degree 4, then eta^3 = 1 + 2 eta - eta^2, eta^4 = -1 - eta + 3 eta^2
  std::array<Rat, 5> t{};
  for (int i = 0; i < 3; ++i) {
    if (c[size_t(i)] == 0) continue;
    for (int j = 0; j < 3; ++j) t[size_t(i + j)] += c[size_t(i)] * o.c[size_t(j)];
  }
  FElem r(t[0], t[1], t[2]);
  r.c[0] += t[3] - t[4];
  r.c[1] += 2 * t[3] - t[4];
  r.c[2] += -t[3] + 3 * t[4];
  return r;
}

FElem FElem::inv() const {
  Poly p = {c[0], c[1], c[2]};
  Poly r = inv_mod(p, eta_min_poly());
  r.resize(3);
  return FElem(r[0], r[1], r[2]);
}

FElem FElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  FElem acc(1), base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

int FElem::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c[0]);
  return exact_sign_via_interval(*this);
}

bool LElem::is_zero() const {
  for (const auto& x : d)
    if (x != 0) return false;
  return true;
}

bool LElem::is_integral() const {
  for (const auto& x : d)
    if (x.get_den() != 1) return false;
  return true;
}

FElem LElem::to_F() const {
  if (!is_F()) throw DomainError("element has nonzero odd part, not in F");
  return even_part();
}

LElem LElem::conj() const {
  LElem r = *this;
  r.d[1] = -r.d[1];
  r.d[3] = -r.d[3];
  r.d[5] = -r.d[5];
  return r;
}

FElem LElem::norm_LF() const { return (*this * conj()).to_F(); }
FElem LElem::trace_LF() const { return (*this + conj()).to_F(); }

LElem LElem::operator+(const LElem& o) const {
  LElem r;
  for (int k = 0; k < 6; ++k) r.d[size_t(k)] = d[size_t(k)] + o.d[size_t(k)];
  return r;
}
LElem LElem::operator-(const LElem& o) const {
  LElem r;
  for (int k = 0; k < 6; ++k) r.d[size_t(k)] = d[size_t(k)] - o.d[size_t(k)];
  return r;
}
LElem LElem::operator-() const {
  LElem r;
  for (int k = 0; k < 6; ++k) r.d[size_t(k)] = -d[size_t(k)];
  return r;
}

LElem LElem::operator*(const LElem& o) const {
  // convolution to degree 10, then reduce theta^6..theta^10:
  //   theta^6  =  1 + 2 theta^2 -   theta^4
  //   theta^7  =      theta   + 2 theta^3 -   theta^5
  //   theta^8  = -1 -   theta^2 + 3 theta^4
  //   theta^9  =     -theta   -   theta^3 + 3 theta^5
  //   theta^10 =  3 + 5 theta^2 - 4 theta^4
  static const long red[5][6] = {
      {1, 0, 2, 0, -1, 0}, {0, 1, 0, 2, 0, -1}, {-1, 0, -1, 0, 3, 0},
      {0, -1, 0, -1, 0, 3}, {3, 0, 5, 0, -4, 0}};
  std::array<Rat, 11> t{};
  for (int i = 0; i < 6; ++i) {
    if (d[size_t(i)] == 0) continue;
    for (int j = 0; j < 6; ++j) t[size_t(i + j)] += d[size_t(i)] * o.d[size_t(j)];
  }
  LElem r;
  for (int k = 0; k < 6; ++k) r.d[size_t(k)] = t[size_t(k)];
  for (int p = 0; p < 5; ++p) {
    if (t[size_t(6 + p)] == 0) continue;
    for (int k = 0; k < 6; ++k)
      if (red[p][k]) r.d[size_t(k)] += red[p][k] * t[size_t(6 + p)];
  }
  return r;
}

LElem LElem::inv() const {
  Poly p(d.begin(), d.end());
  Poly r = inv_mod(p, theta_min_poly());
  r.resize(6);
  LElem out;
  for (int k = 0; k < 6; ++k) out.d[size_t(k)] = r[size_t(k)];
  return out;
}

LElem LElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  LElem acc(1), base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

int LElem::sign() const {
  if (is_zero()) return 0;
  if (is_F() && even_part().is_rational()) return sgn(d[0]);
  return exact_sign_via_interval(*this);
}

}  // namespace gcf237
