#pragma once

#include <array>
#include <string>

#include "gcf237/common.hpp"

namespace gcf237 {

// Exact element of F = Q(eta), eta = 2cos(2pi/7) the unique positive root of
// X^3 + X^2 - 2X - 1, stored as rational coordinates in the basis {1, eta, eta^2}.
class FElem {
 public:
  FElem() = default;
  FElem(long n) { c[0] = n; }
  explicit FElem(const Rat& r) { c[0] = r; }
  FElem(Rat c0, Rat c1, Rat c2) : c{std::move(c0), std::move(c1), std::move(c2)} {}

  static FElem eta() { return FElem(Rat(0), Rat(1), Rat(0)); }

  const Rat& operator[](int k) const { return c[k]; }
  Rat& operator[](int k) { return c[k]; }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
  bool is_rational() const { return c[1] == 0 && c[2] == 0; }
  // all coordinates in Z, i.e. membership in Z[eta]
  bool is_integral() const;

  FElem operator+(const FElem& o) const;
  FElem operator-(const FElem& o) const;
  FElem operator*(const FElem& o) const;
  FElem operator-() const;
  FElem& operator+=(const FElem& o) { return *this = *this + o; }
  FElem& operator-=(const FElem& o) { return *this = *this - o; }
  FElem& operator*=(const FElem& o) { return *this = *this * o; }
  bool operator==(const FElem& o) const { return c == o.c; }
  bool operator!=(const FElem& o) const { return c != o.c; }

  FElem inv() const;  // throws DomainError on zero
  FElem pow(long e) const;

  // Sign under the real embedding sending eta to the positive root.
  int sign() const;

  std::array<Rat, 3> c{};
};

inline FElem operator*(const Rat& r, const FElem& x) { return FElem(Rat(r)) * x; }

// Exact element of L = Q(theta), theta = sqrt(eta) the unique positive root of
// X^6 + X^4 - 2X^2 - 1, stored in the basis {1, theta, ..., theta^5}.  The image
// of F is the set of even-coordinate elements; conj is the Galois involution
// theta -> -theta of L/F.
class LElem {
 public:
  LElem() = default;
  LElem(long n) { d[0] = n; }
  explicit LElem(const Rat& r) { d[0] = r; }
  explicit LElem(std::array<Rat, 6> dd) : d(std::move(dd)) {}

  static LElem theta() {
    LElem t;
    t.d[1] = 1;
    return t;
  }
  static LElem from_F(const FElem& x) {
    LElem r;
    r.d[0] = x[0];
    r.d[2] = x[1];
    r.d[4] = x[2];
    return r;
  }

  const Rat& operator[](int k) const { return d[k]; }
  Rat& operator[](int k) { return d[k]; }

  bool is_zero() const;
  bool is_F() const { return d[1] == 0 && d[3] == 0 && d[5] == 0; }
  bool is_integral() const;

  // z = even_part() + odd_part() * theta with both parts in F
  FElem even_part() const { return FElem(d[0], d[2], d[4]); }
  FElem odd_part() const { return FElem(d[1], d[3], d[5]); }
  FElem to_F() const;  // throws DomainError unless is_F()

  LElem conj() const;            // theta -> -theta
  FElem norm_LF() const;         // z * conj(z), lands in F
  FElem trace_LF() const;        // z + conj(z), lands in F

  LElem operator+(const LElem& o) const;
  LElem operator-(const LElem& o) const;
  LElem operator*(const LElem& o) const;
  LElem operator-() const;
  LElem& operator+=(const LElem& o) { return *this = *this + o; }
  LElem& operator-=(const LElem& o) { return *this = *this - o; }
  LElem& operator*=(const LElem& o) { return *this = *this * o; }
  bool operator==(const LElem& o) const { return d == o.d; }
  bool operator!=(const LElem& o) const { return d != o.d; }

  LElem inv() const;  // throws DomainError on zero
  LElem pow(long e) const;

  int sign() const;

  std::array<Rat, 6> d{};
};

inline LElem operator*(const Rat& r, const LElem& x) { return LElem(r) * x; }
inline LElem operator*(const FElem& f, const LElem& x) { return LElem::from_F(f) * x; }

}  // namespace gcf237
