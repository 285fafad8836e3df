#pragma once

#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcf237/common.hpp"

namespace gcf237 {

class FElem;
class LElem;

// Closed interval [lo, hi] with arbitrary-precision dyadic endpoints.  Every
// operation rounds the lower endpoint down and the upper endpoint up, so the
// result always encloses the exact value (inclusion monotone).  Endpoints may
// be infinite (a division whose divisor straddles zero yields the whole line).
class IntervalReal {
 public:
  explicit IntervalReal(long prec = 64);
  IntervalReal(const Rat& x, long prec);
  IntervalReal(const Rat& lo, const Rat& hi, long prec);
  IntervalReal(const IntervalReal& o);
  IntervalReal(IntervalReal&& o) noexcept;
  IntervalReal& operator=(const IntervalReal& o);
  IntervalReal& operator=(IntervalReal&& o) noexcept;
  ~IntervalReal();

  long precision() const { return prec_; }

  static IntervalReal from_long(long v, long prec);
  static IntervalReal whole_line(long prec);

  IntervalReal operator+(const IntervalReal& o) const;
  IntervalReal operator-(const IntervalReal& o) const;
  IntervalReal operator*(const IntervalReal& o) const;
  IntervalReal operator/(const IntervalReal& o) const;  // whole line if o straddles 0
  IntervalReal operator-() const;
  IntervalReal sqrt() const;  // requires hi >= 0; clamps lo to 0 when lo < 0
  IntervalReal abs() const;

  bool contains_zero() const;
  bool is_finite() const;
  // +1 when lo > 0, -1 when hi < 0, 0 otherwise (zero inside or on boundary)
  int sign() const;
  bool contains(const IntervalReal& o) const;  // this interval encloses o

  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  double width_double() const;
  void mid_mpfr(mpfr_ptr out) const;  // midpoint at out's precision

  // "2.7182818284590431 +- 1e-16"-style rendering of the enclosure
  std::string decimal(int significant_digits = 17) const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }

 private:
  mpfr_t lo_, hi_;
  long prec_;
};

// Root isolation by bisection.  `poly` (rational coefficients, low degree
// first) must change sign exactly once on [lo, hi]; returns an enclosure of
// width <= 2^-precision (or a point interval when bisection lands on the
// root exactly).  Throws DomainError when there is no sign change.
IntervalReal isolate_root(const std::vector<Rat>& poly, const Rat& lo, const Rat& hi,
                          long precision);

// Enclosures of eta and theta at >= prec valid bits.  Backed by a per-thread
// bisection bracket that only ever narrows; the pinned isolating intervals
// ([1.24, 1.25] and [1.1, 1.2]) are verified by a sign change on first use.
IntervalReal eta_enclosure(long prec);
IntervalReal theta_enclosure(long prec);

IntervalReal eval_interval(const FElem& x, long prec);
IntervalReal eval_interval(const LElem& x, long prec);

// Certified sign resolution.  `exact_zero` is the symbolic zero oracle:
// nullopt means "unknown" (numeric mode).  When the oracle answers, no
// refinement runs.  Otherwise precision doubles from start_prec until the
// enclosure excludes zero; max_prec == 0 means unbounded (exact operands),
// else PrecisionExhausted is thrown past max_prec.
int resolve_sign(const std::function<IntervalReal(long)>& eval,
                 std::optional<bool> exact_zero, long start_prec, long max_prec);

// Unbounded refinement for nonzero exact field elements (internal helper for
// FElem::sign / LElem::sign).
int exact_sign_via_interval(const FElem& x);
int exact_sign_via_interval(const LElem& x);

}  // namespace gcf237
