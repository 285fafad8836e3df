#include "gcf237/interval.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>

#include "gcf237/fields.hpp"

namespace gcf237 {

NumericConfig& numeric_config() {
  thread_local NumericConfig cfg;
  return cfg;
}

IntervalReal::IntervalReal(long prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

IntervalReal::IntervalReal(const Rat& x, long prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

IntervalReal::IntervalReal(const Rat& lo, const Rat& hi, long prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

IntervalReal::IntervalReal(const IntervalReal& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalReal::IntervalReal(IntervalReal&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

IntervalReal& IntervalReal::operator=(const IntervalReal& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.prec_);
  mpfr_set_prec(hi_, o.prec_);
  prec_ = o.prec_;
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

IntervalReal& IntervalReal::operator=(IntervalReal&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

IntervalReal::~IntervalReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

IntervalReal IntervalReal::from_long(long v, long prec) {
  IntervalReal r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::whole_line(long prec) {
  IntervalReal r(prec);
  mpfr_set_inf(r.lo_, -1);
  mpfr_set_inf(r.hi_, 1);
  return r;
}

IntervalReal IntervalReal::operator+(const IntervalReal& o) const {
  IntervalReal r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::operator-(const IntervalReal& o) const {
  IntervalReal r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::operator-() const {
  IntervalReal r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::operator*(const IntervalReal& o) const {
  long p = std::max(prec_, o.prec_);
  IntervalReal r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  // lower endpoint: min of the four products rounded down
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  // upper endpoint: max of the four products rounded up
  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  // 0 * inf produces NaN; any NaN endpoint degrades to the whole line
  if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_)) return whole_line(p);
  return r;
}

IntervalReal IntervalReal::operator/(const IntervalReal& o) const {
  long p = std::max(prec_, o.prec_);
  if (o.contains_zero()) return whole_line(p);
  // 1/[c,d] = [1/d, 1/c] for any interval not containing zero
  IntervalReal inv(p);
  mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * inv;
}

IntervalReal IntervalReal::sqrt() const {
  IntervalReal r(prec_);
  if (mpfr_sgn(hi_) < 0) throw DomainError("sqrt of negative interval");
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::abs() const {
  IntervalReal r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

bool IntervalReal::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool IntervalReal::is_finite() const {
  return mpfr_number_p(lo_) && mpfr_number_p(hi_);
}

int IntervalReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

bool IntervalReal::contains(const IntervalReal& o) const {
  return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

double IntervalReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double IntervalReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double IntervalReal::mid_double() const { return (lo_double() + hi_double()) / 2; }

void IntervalReal::mid_mpfr(mpfr_ptr out) const {
  mpfr_add(out, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(out, out, 1, MPFR_RNDN);
}

double IntervalReal::width_double() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

std::string IntervalReal::decimal(int significant_digits) const {
  if (!is_finite()) return "inf";
  mpfr_t mid, rad;
  mpfr_init2(mid, prec_ + 8);
  mpfr_init2(rad, 64);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(rad, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);

  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", significant_digits, mid) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);

  if (mpfr_zero_p(rad)) {
    out += " +- 0";
  } else {
    // one-significant-figure power-of-ten upper bound on the radius
    long exp10 = long(std::floor(double(mpfr_get_exp(rad)) * 0.30102999566398) - 1);
    mpfr_t bound;
    mpfr_init2(bound, 64);
    mpfr_set_ui(bound, 10, MPFR_RNDU);
    mpfr_pow_si(bound, bound, exp10, MPFR_RNDU);
    while (mpfr_cmp(bound, rad) < 0) {
      ++exp10;
      mpfr_mul_ui(bound, bound, 10, MPFR_RNDU);
    }
    out += " +- 1e" + std::to_string(exp10);
    mpfr_clear(bound);
  }
  mpfr_clear(mid);
  mpfr_clear(rad);
  return out;
}

namespace {

// sign of sum_k coef[k] * (num/den)^k, exactly, in integer arithmetic
int poly_sign_at(const std::vector<Int>& coef, const Int& num, const Int& den) {
  Int acc = coef.back();
  Int dpow = 1;
  for (int k = int(coef.size()) - 2; k >= 0; --k) {
    dpow *= den;
    acc = acc * num + coef[size_t(k)] * dpow;
  }
  return sgn(acc);
}

struct Bracket {
  std::vector<Int> coef;  // integer polynomial
  Int num_lo, num_hi;     // root in [num_lo/den, num_hi/den]
  Int den;
  int sign_lo;
  long bits = 0;  // guaranteed: width <= initial_width * 2^-bits

  void refine_to(long want_bits) {
    while (bits < want_bits) {
      Int mid_num = num_lo + num_hi;  // denominator doubles
      Int den2 = den * 2;
      num_lo *= 2;
      num_hi *= 2;
      int s = poly_sign_at(coef, mid_num, den2);
      if (s == 0) {  // exact hit: collapse to the point
        num_lo = mid_num;
        num_hi = mid_num;
        den = den2;
        bits = want_bits;
        return;
      }
      if (s == sign_lo)
        num_lo = mid_num;
      else
        num_hi = mid_num;
      den = den2;
      ++bits;
    }
  }

  IntervalReal to_interval(long prec) const {
    Rat lo(num_lo, den), hi(num_hi, den);
    lo.canonicalize();
    hi.canonicalize();
    return IntervalReal(lo, hi, prec);
  }
};

std::vector<Int> to_int_poly(const std::vector<Rat>& poly) {
  Int l = 1;
  for (const auto& c : poly) l = lcm(l, c.get_den());
  std::vector<Int> out;
  out.reserve(poly.size());
  for (const auto& c : poly) out.push_back(c.get_num() * (l / c.get_den()));
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

Bracket make_bracket(const std::vector<Rat>& poly, const Rat& lo, const Rat& hi) {
  Bracket b;
  b.coef = to_int_poly(poly);
  Int den = lcm(lo.get_den(), hi.get_den());
  b.den = den;
  b.num_lo = lo.get_num() * (den / lo.get_den());
  b.num_hi = hi.get_num() * (den / hi.get_den());
  if (b.num_lo > b.num_hi) throw DomainError("empty bracket");
  int slo = poly_sign_at(b.coef, b.num_lo, b.den);
  int shi = poly_sign_at(b.coef, b.num_hi, b.den);
  if (slo == 0) {
    b.num_hi = b.num_lo;
    b.sign_lo = 0;
    return b;
  }
  if (shi == 0) {
    b.num_lo = b.num_hi;
    b.sign_lo = 0;
    return b;
  }
  if (slo == shi) throw DomainError("no sign change on bracket");
  b.sign_lo = slo;
  return b;
}

// per-thread refinable brackets for eta and theta
struct TowerBrackets {
  Bracket eta, theta;
  TowerBrackets() {
    // Verify the pinned isolating intervals by a sign change, then bisect the
    // dyadic brackets [1,2] (each polynomial has exactly one root there).
    const std::vector<Rat> fe = {Rat(-1), Rat(-2), Rat(1), Rat(1)};
    const std::vector<Rat> ft = {Rat(-1), Rat(0), Rat(-2), Rat(0), Rat(1), Rat(0), Rat(1)};
    (void)make_bracket(fe, Rat(124, 100), Rat(125, 100));  // throws unless sign change
    (void)make_bracket(ft, Rat(11, 10), Rat(12, 10));
    eta = make_bracket(fe, Rat(1), Rat(2));
    theta = make_bracket(ft, Rat(1), Rat(2));
  }
};

TowerBrackets& tower_brackets() {
  thread_local TowerBrackets tb;
  return tb;
}

IntervalReal horner(const Rat* coef, int n, const IntervalReal& x, long prec) {
  IntervalReal acc(coef[n - 1], prec);
  for (int k = n - 2; k >= 0; --k) acc = acc * x + IntervalReal(coef[size_t(k)], prec);
  return acc;
}

}  // namespace

IntervalReal isolate_root(const std::vector<Rat>& poly, const Rat& lo, const Rat& hi,
                          long precision) {
  Bracket b = make_bracket(poly, lo, hi);
  // initial width may exceed 1; add enough steps to push below 2^-precision
  Rat w = Rat(b.num_hi - b.num_lo, b.den);
  w.canonicalize();
  long extra = 0;
  while (w > 1) {
    w /= 2;
    ++extra;
  }
  b.refine_to(precision + extra);
  return b.to_interval(precision + 16);
}

IntervalReal eta_enclosure(long prec) {
  auto& b = tower_brackets().eta;
  b.refine_to(prec + 2);
  return b.to_interval(prec);
}

IntervalReal theta_enclosure(long prec) {
  auto& b = tower_brackets().theta;
  b.refine_to(prec + 2);
  return b.to_interval(prec);
}

IntervalReal eval_interval(const FElem& x, long prec) {
  return horner(x.c.data(), 3, eta_enclosure(prec), prec);
}

IntervalReal eval_interval(const LElem& x, long prec) {
  return horner(x.d.data(), 6, theta_enclosure(prec), prec);
}

int resolve_sign(const std::function<IntervalReal(long)>& eval,
                 std::optional<bool> exact_zero, long start_prec, long max_prec) {
  if (exact_zero.has_value() && *exact_zero) return 0;
  long p = std::max<long>(start_prec, 8);
  for (;;) {
    IntervalReal box = eval(p);
    int s = box.sign();
    if (s != 0) return s;
    if (max_prec > 0 && p >= max_prec)
      throw PrecisionExhausted("sign undecided at max precision " + std::to_string(max_prec));
    p *= 2;
  }
}

int exact_sign_via_interval(const FElem& x) {
  return resolve_sign([&](long p) { return eval_interval(x, p); }, std::optional<bool>(false),
                      64, 0);
}

int exact_sign_via_interval(const LElem& x) {
  return resolve_sign([&](long p) { return eval_interval(x, p); }, std::optional<bool>(false),
                      64, 0);
}

}  // namespace gcf237
