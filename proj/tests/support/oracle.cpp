#include "support/oracle.hpp"

#include <mpfr.h>

#include "gcf237/geometry.hpp"
#include "gcf237/interval.hpp"

namespace gcf237::testsupport {

namespace {

// theta by Newton iteration on f(x) = x^6 + x^4 - 2x^2 - 1 from x = 1.1167
void newton_theta(mpfr_ptr out, long prec) {
  mpfr_t x, fx, dfx, x2, t;
  mpfr_inits2(prec, x, fx, dfx, x2, t, mpfr_ptr(nullptr));
  mpfr_set_d(x, 1.1166824095, MPFR_RNDN);
  for (int it = 0; it < 64; ++it) {
    mpfr_sqr(x2, x, MPFR_RNDN);
    // f = ((x2 + 1) * x2 - 2) * x2 - 1
    mpfr_add_ui(fx, x2, 1, MPFR_RNDN);
    mpfr_mul(fx, fx, x2, MPFR_RNDN);
    mpfr_sub_ui(fx, fx, 2, MPFR_RNDN);
    mpfr_mul(fx, fx, x2, MPFR_RNDN);
    mpfr_sub_ui(fx, fx, 1, MPFR_RNDN);
    // f' = 6x^5 + 4x^3 - 4x = x * (6 x2^2 + 4 x2 - 4)
    mpfr_sqr(dfx, x2, MPFR_RNDN);
    mpfr_mul_ui(dfx, dfx, 6, MPFR_RNDN);
    mpfr_mul_ui(t, x2, 4, MPFR_RNDN);
    mpfr_add(dfx, dfx, t, MPFR_RNDN);
    mpfr_sub_ui(dfx, dfx, 4, MPFR_RNDN);
    mpfr_mul(dfx, dfx, x, MPFR_RNDN);
    mpfr_div(t, fx, dfx, MPFR_RNDN);
    mpfr_sub(x, x, t, MPFR_RNDN);
  }
  mpfr_set(out, x, MPFR_RNDN);
  mpfr_clears(x, fx, dfx, x2, t, mpfr_ptr(nullptr));
}

int sign_at_theta(const Rat* coef, int n, long prec) {
  mpfr_t th, acc, c;
  mpfr_inits2(prec, th, acc, c, mpfr_ptr(nullptr));
  newton_theta(th, prec);
  mpfr_set_q(acc, coef[n - 1].get_mpq_t(), MPFR_RNDN);
  for (int k = n - 2; k >= 0; --k) {
    mpfr_mul(acc, acc, th, MPFR_RNDN);
    mpfr_set_q(c, coef[size_t(k)].get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc, acc, c, MPFR_RNDN);
  }
  int s = mpfr_sgn(acc);
  mpfr_clears(th, acc, c, mpfr_ptr(nullptr));
  return s;
}

}  // namespace

int sign_via_mpfr(const LElem& x, long prec) { return sign_at_theta(x.d.data(), 6, prec); }

int sign_via_mpfr(const FElem& x, long prec) {
  LElem l = LElem::from_F(x);
  return sign_via_mpfr(l, prec);
}

namespace {

int certified_sign_or_throw(const IntervalReal& v) {
  int s = v.sign();
  if (s == 0) throw PrecisionExhausted("oracle comparison undecided");
  return s;
}

struct Crossing {
  int edge;
  IntervalReal x, y;  // crossing point
  Crossing(int e, IntervalReal xx, IntervalReal yy)
      : edge(e), x(std::move(xx)), y(std::move(yy)) {}
};

}  // namespace

int exit_edge_oracle(const OrientedGeodesic& geo, long prec) {
  const HeptagonData& H = HeptagonData::get();
  const long p = prec;

  bool a_inf = geo.alpha.is_infinity(), b_inf = geo.beta.is_infinity();
  IntervalReal A(p), B(p);
  if (!a_inf) A = geo.alpha.eval(p);
  if (!b_inf) B = geo.beta.eval(p);

  bool vertical = a_inf || b_inf;
  IntervalReal m(p), r2(p);
  if (!vertical) {
    IntervalReal two = IntervalReal::from_long(2, p);
    m = (A + B) / two;
    IntervalReal r = ((A - B) / two).abs();
    r2 = r * r;
  }
  IntervalReal x_vert = a_inf ? B : A;

  std::vector<Crossing> found;
  for (int i = 0; i < 7; ++i) {
    IntervalReal pi = eval_interval(H.edge_p[size_t(i)], p);
    IntervalReal qi = eval_interval(H.edge_q[size_t(i)], p);
    IntervalReal two = IntervalReal::from_long(2, p);
    IntervalReal mi = (pi + qi) / two;
    IntervalReal ri = ((qi - pi) / two).abs();
    IntervalReal ri2 = ri * ri;

    IntervalReal xs(p), ys2(p);
    if (vertical) {
      xs = x_vert;
      ys2 = ri2 - (xs - mi) * (xs - mi);
    } else {
      IntervalReal d = (m - mi) * IntervalReal::from_long(2, p);
      if (d.contains_zero()) throw PrecisionExhausted("oracle: nearly concentric circles");
      // equal-power line of the two circles
      xs = (r2 - ri2 + mi * mi - m * m) / (-d);
      ys2 = r2 - (xs - m) * (xs - m);
    }
    int sy = ys2.sign();
    if (sy < 0) continue;  // no intersection with this edge circle
    if (sy == 0) throw PrecisionExhausted("oracle: tangency undecided");

    // inside the closed edge segment: x between the vertex abscissas
    IntervalReal xi = eval_interval(H.vertex[size_t(i)].x, p);
    IntervalReal xj = eval_interval(H.vertex[size_t((i + 1) % 7)].x, p);
    IntervalReal lo = xi, hi = xj;
    if (certified_sign_or_throw(xj - xi) < 0) std::swap(lo, hi);
    int above = (xs - lo).sign();
    int below = (hi - xs).sign();
    if (above == 0 || below == 0) throw PrecisionExhausted("oracle: crossing at a vertex");
    if (above < 0 || below < 0) continue;
    found.emplace_back(i, xs, ys2.sqrt());
  }

  if (found.size() != 2) throw PrecisionExhausted("oracle: did not find two crossings");
  int exit_idx;
  if (vertical) {
    // coming down from infinity toward alpha (or up when alpha = inf)
    int cmp = certified_sign_or_throw(found[0].y - found[1].y);
    bool first_lower = cmp < 0;
    exit_idx = b_inf ? (first_lower ? 0 : 1) : (first_lower ? 1 : 0);
  } else {
    int dir = certified_sign_or_throw(A - B);
    int cmp = certified_sign_or_throw(found[0].x - found[1].x);
    // exit crossing lies farther along the direction of travel
    exit_idx = (dir > 0) == (cmp > 0) ? 0 : 1;
  }
  return balanced_digit(found[size_t(exit_idx)].edge);
}

std::vector<QuadraticInput> random_quadratic_inputs(size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> den(1, 2);
  std::vector<QuadraticInput> out;
  while (out.size() < n) {
    LElem z, w;
    for (int k = 0; k < 6; ++k) {
      z[k] = Rat(coef(rng), den(rng));
      z[k].canonicalize();
      w[k] = Rat(coef(rng), den(rng));
      w[k].canonicalize();
    }
    QuadraticInput q{z, w, coef(rng) >= 0 ? 1 : -1};
    if (q.w.is_zero()) continue;
    if (discriminant(q).sign() <= 0) continue;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace gcf237::testsupport
