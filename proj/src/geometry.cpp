#include "gcf237/geometry.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "gcf237/interval.hpp"

namespace gcf237 {

// ---------------------------------------------------------------------------
// BoundaryPoint

BoundaryPoint BoundaryPoint::infinity() { return BoundaryPoint(); }

BoundaryPoint BoundaryPoint::exact(QuadVal v) {
  BoundaryPoint p;
  p.kind_ = Kind::Exact;
  p.val_ = std::move(v);
  return p;
}

BoundaryPoint BoundaryPoint::exact_L(LElem v) { return exact(QuadVal(std::move(v))); }

BoundaryPoint BoundaryPoint::numeric(NumericPtr base) {
  BoundaryPoint p;
  p.kind_ = Kind::Numeric;
  p.base_ = std::move(base);
  p.mob_ = {LElem(1), LElem(), LElem(), LElem(1)};
  return p;
}

const QuadVal& BoundaryPoint::exact_value() const {
  if (!is_exact()) throw DomainError("boundary point is not exact");
  return val_;
}

IntervalReal BoundaryPoint::eval(long prec) const {
  switch (kind_) {
    case Kind::Infinity:
      throw DomainError("cannot evaluate the point at infinity");
    case Kind::Exact:
      return val_.eval(prec);
    case Kind::Numeric: {
      IntervalReal t = base_->eval(prec);
      IntervalReal num = eval_interval(mob_[0], prec) * t + eval_interval(mob_[1], prec);
      IntervalReal den = eval_interval(mob_[2], prec) * t + eval_interval(mob_[3], prec);
      return num / den;  // whole line when den straddles zero
    }
  }
  throw std::logic_error("unreachable");
}

BoundaryPoint BoundaryPoint::moebius(const LElem& a, const LElem& b, const LElem& c,
                                     const LElem& d) const {
  switch (kind_) {
    case Kind::Infinity: {
      if (c.is_zero()) return infinity();
      return exact_L(a * c.inv());
    }
    case Kind::Exact: {
      QuadVal den = QuadVal(c) * val_ + QuadVal(d);
      if (den.sign() == 0) return infinity();
      QuadVal num = QuadVal(a) * val_ + QuadVal(b);
      return exact(num * den.inv());
    }
    case Kind::Numeric: {
      BoundaryPoint p = *this;
      p.mob_ = {a * mob_[0] + b * mob_[2], a * mob_[1] + b * mob_[3],
                c * mob_[0] + d * mob_[2], c * mob_[1] + d * mob_[3]};
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

bool BoundaryPoint::same_exact(const BoundaryPoint& o) const {
  if (is_infinity() || o.is_infinity()) return is_infinity() && o.is_infinity();
  if (!is_exact() || !o.is_exact()) throw DomainError("exact comparison of numeric points");
  return val_ == o.val_;
}

BoundaryPoint mobius(const GroupElement& g, const BoundaryPoint& p) {
  return p.moebius(g.a(), g.b(), g.c(), g.d());
}

OrientedGeodesic transport(const GroupElement& g, const OrientedGeodesic& geo) {
  return {mobius(g, geo.beta), mobius(g, geo.alpha), std::nullopt};
}

// ---------------------------------------------------------------------------
// HeptagonData

namespace {

std::optional<LElem> mobius_L(const GroupElement& g, const LElem& t) {
  LElem den = g.c() * t + g.d();
  if (den.is_zero()) return std::nullopt;
  return (g.a() * t + g.b()) * den.inv();
}

VertexData fixed_point_data(const GroupElement& g) {
  // fixed-point quadratic of an elliptic element: c X^2 + (d-a) X - b
  LElem c = g.c();
  if (c.is_zero()) throw std::logic_error("elliptic element with zero lower-left entry");
  LElem cinv = c.inv();
  LElem two_c_inv = (c + c).inv();
  VertexData v;
  v.x = (g.a() - g.d()) * two_c_inv;
  v.n = -(g.b() * cinv);
  return v;
}

int side_sign_exact(const VertexData& v, const LElem& sum, const LElem& prod) {
  return (v.n - sum * v.x + prod).sign();
}

HeptagonData build_heptagon() {
  HeptagonData H;
  const GroupElement& g2 = gen_g2();
  const GroupElement& g3 = gen_g3();
  const GroupElement& g7 = gen_g7();

  H.tau7 = fixed_point_data(g7);
  H.tau2 = fixed_point_data(g2);
  for (int i = 0; i < 7; ++i) {
    GroupElement gi = g7_pow(i);
    GroupElement conj = gi * g3 * gi.inverse();
    H.vertex[size_t(i)] = fixed_point_data(conj);
  }
  H.tau3 = H.vertex[0];
  H.tau3p = H.vertex[1];

  LElem th = LElem::theta();
  for (int i = 0; i < 7; ++i) {
    GroupElement gi = g7_pow(i);
    auto p = mobius_L(gi, -th);
    auto q = mobius_L(gi, th);
    if (!p || !q) throw std::logic_error("edge geodesic endpoint at infinity");
    H.edge_p[size_t(i)] = *p;
    H.edge_q[size_t(i)] = *q;
    H.edge_sum[size_t(i)] = *p + *q;
    H.edge_prod[size_t(i)] = *p * *q;
  }

  for (int i = 0; i < 7; ++i) {
    H.center_side[size_t(i)] =
        side_sign_exact(H.tau7, H.edge_sum[size_t(i)], H.edge_prod[size_t(i)]);
    if (H.center_side[size_t(i)] == 0)
      throw std::logic_error("heptagon center on an edge geodesic");
  }

  // consistency: V_i and V_{i+1} lie on c_i (adjacent edges meet at the shared
  // vertex), tau3 left of the imaginary axis, tau2 on c_0
  for (int i = 0; i < 7; ++i) {
    const auto& s = H.edge_sum[size_t(i)];
    const auto& pr = H.edge_prod[size_t(i)];
    if (side_sign_exact(H.vertex[size_t(i)], s, pr) != 0 ||
        side_sign_exact(H.vertex[size_t((i + 1) % 7)], s, pr) != 0)
      throw std::logic_error("heptagon vertex off its edge geodesic");
  }
  if (H.tau3.x.sign() >= 0 || H.tau3p.x.sign() <= 0)
    throw std::logic_error("unexpected heptagon orientation");
  if (side_sign_exact(H.tau2, H.edge_sum[0], H.edge_prod[0]) != 0)
    throw std::logic_error("tau2 off the edge geodesic c_0");
  return H;
}

}  // namespace

const HeptagonData& HeptagonData::get() {
  static const HeptagonData H = build_heptagon();
  return H;
}

// ---------------------------------------------------------------------------
// Predicates

namespace {

bool any_numeric(const OrientedGeodesic& geo) {
  return geo.alpha.is_numeric() || geo.beta.is_numeric();
}

int certified_sign(const std::function<IntervalReal(long)>& eval) {
  const NumericConfig& cfg = numeric_config();
  return resolve_sign(eval, std::nullopt, cfg.start_prec, cfg.max_prec);
}

// sign of alpha - beta (direction of increasing real part), both finite
int direction_sign(const OrientedGeodesic& geo) {
  if (!any_numeric(geo))
    return (geo.alpha.exact_value() - geo.beta.exact_value()).sign();
  return certified_sign(
      [&](long p) { return geo.alpha.eval(p) - geo.beta.eval(p); });
}

}  // namespace

int side_of_vertex(const VertexData& v, const OrientedGeodesic& geo) {
  bool a_inf = geo.alpha.is_infinity();
  bool b_inf = geo.beta.is_infinity();
  if (a_inf && b_inf) throw DomainError("degenerate geodesic");
  if (a_inf || b_inf) {
    const BoundaryPoint& x0 = a_inf ? geo.beta : geo.alpha;
    if (x0.is_exact()) return (QuadVal(v.x) - x0.exact_value()).sign();
    return certified_sign([&](long p) { return eval_interval(v.x, p) - x0.eval(p); });
  }
  if (!any_numeric(geo)) {
    QuadVal s = geo.alpha.exact_value() + geo.beta.exact_value();
    QuadVal pr = geo.alpha.exact_value() * geo.beta.exact_value();
    return (QuadVal(v.n) - s * QuadVal(v.x) + pr).sign();
  }
  return certified_sign([&](long p) {
    IntervalReal A = geo.alpha.eval(p);
    IntervalReal B = geo.beta.eval(p);
    return eval_interval(v.n, p) - (A + B) * eval_interval(v.x, p) + A * B;
  });
}

namespace {

// true iff the boundary point lies on the open arc on the non-heptagon side
// of the edge geodesic c_m
bool boundary_outside(const BoundaryPoint& xi, int m) {
  const HeptagonData& H = HeptagonData::get();
  const LElem& S = H.edge_sum[size_t(m)];
  const LElem& P = H.edge_prod[size_t(m)];
  int s;
  if (xi.is_infinity()) {
    s = 1;
  } else if (xi.is_exact()) {
    const QuadVal& x = xi.exact_value();
    s = (x * x - QuadVal(S) * x + QuadVal(P)).sign();
  } else {
    s = certified_sign([&](long p) {
      IntervalReal X = xi.eval(p);
      return X * X - eval_interval(S, p) * X + eval_interval(P, p);
    });
  }
  if (s == 0)
    throw std::logic_error("boundary point on an edge geodesic during arc test");
  return s == -H.center_side[size_t(m)];
}

// among two vertices lying on the geodesic, the one crossed first
int first_along(const OrientedGeodesic& geo, int j, int k) {
  const HeptagonData& H = HeptagonData::get();
  if (geo.beta.is_infinity()) {
    int c = (H.vertex[size_t(j)].n - H.vertex[size_t(k)].n).sign();
    return c > 0 ? j : k;  // coming down from infinity: larger |V|^2 first
  }
  if (geo.alpha.is_infinity()) {
    int c = (H.vertex[size_t(j)].n - H.vertex[size_t(k)].n).sign();
    return c < 0 ? j : k;
  }
  int dir = direction_sign(geo);
  int dx = (H.vertex[size_t(k)].x - H.vertex[size_t(j)].x).sign();
  if (dx == 0) throw std::logic_error("distinct vertices with equal abscissa on a semicircle");
  return dx == dir ? j : k;
}

}  // namespace

CrossingInfo classify_crossing(const OrientedGeodesic& geo) {
  const HeptagonData& H = HeptagonData::get();
  std::array<int, 7> side{};
  for (int i = 0; i < 7; ++i) side[size_t(i)] = side_of_vertex(H.vertex[size_t(i)], geo);

  int zeros[2] = {-1, -1};
  int nzero = 0;
  for (int i = 0; i < 7; ++i)
    if (side[size_t(i)] == 0) {
      if (nzero == 2) throw std::logic_error("three heptagon vertices on one geodesic");
      zeros[nzero++] = i;
    }
  int edges[2] = {-1, -1};
  int nedge = 0;
  for (int i = 0; i < 7; ++i)
    if (side[size_t(i)] * side[size_t((i + 1) % 7)] == -1) {
      if (nedge == 2) throw std::logic_error("geodesic crossing more than two edges");
      edges[nedge++] = i;
    }

  CrossingInfo out;
  if (nzero == 0) {
    if (nedge == 0) return out;
    if (nedge != 2) throw std::logic_error("odd number of edge crossings");
    bool a1 = boundary_outside(geo.alpha, edges[0]);
    bool a2 = boundary_outside(geo.alpha, edges[1]);
    if (a1 == a2) throw std::logic_error("entry/exit disambiguation failed");
    out.intersects = true;
    out.exit_edge = a1 ? edges[0] : edges[1];
    out.entry_edge = a1 ? edges[1] : edges[0];
    return out;
  }
  if (nzero == 1) {
    int j = zeros[0];
    out.intersects = true;
    if (nedge == 0) {
      // touches D exactly at V_j: enters from e_j, leaves from e'_{j-1}
      out.entry_edge = j;
      out.exit_edge = (j + 6) % 7;
      out.entry_vertex = out.exit_vertex = j;
      return out;
    }
    if (nedge != 1) throw std::logic_error("vertex hit with multiple edge crossings");
    int m = edges[0];
    if (boundary_outside(geo.beta, j)) {
      out.entry_edge = j;
      out.entry_vertex = j;
      out.exit_edge = m;
    } else {
      out.entry_edge = m;
      out.exit_edge = (j + 6) % 7;
      out.exit_vertex = j;
    }
    return out;
  }
  if (nedge != 0) throw std::logic_error("two vertex hits plus an edge crossing");
  int first = first_along(geo, zeros[0], zeros[1]);
  int second = first == zeros[0] ? zeros[1] : zeros[0];
  out.intersects = true;
  out.entry_edge = first;
  out.entry_vertex = first;
  out.exit_edge = (second + 6) % 7;
  out.exit_vertex = second;
  return out;
}

namespace {

bool alpha_inside_c0(const OrientedGeodesic& geo) {
  if (geo.alpha.is_infinity()) return false;
  LElem eta = LElem::from_F(FElem::eta());
  if (geo.alpha.is_exact()) {
    const QuadVal& a = geo.alpha.exact_value();
    return (a * a - QuadVal(eta)).sign() < 0;
  }
  int s = certified_sign([&](long p) {
    IntervalReal A = geo.alpha.eval(p);
    return A * A - eval_interval(eta, p);
  });
  return s < 0;
}

}  // namespace

bool is_reduced(const OrientedGeodesic& geo) {
  CrossingInfo ci = classify_crossing(geo);
  if (!ci.intersects || ci.entry_edge != 0) return false;
  return alpha_inside_c0(geo);
}

int balanced_digit(int edge_index) {
  int e = ((edge_index % 7) + 7) % 7;
  return e <= 3 ? e : e - 7;
}

int edge_index_of_digit(int digit) { return digit >= 0 ? digit : digit + 7; }

int exit_edge(const OrientedGeodesic& geo) {
  CrossingInfo ci = classify_crossing(geo);
  if (!ci.intersects || ci.entry_edge != 0 || !alpha_inside_c0(geo))
    throw DomainError("exit_edge requires a reduced geodesic");
  if (ci.exit_edge == 0) throw std::logic_error("reduced geodesic leaving from e_0'");
  return balanced_digit(ci.exit_edge);
}

// ---------------------------------------------------------------------------
// Initial reduction

namespace {

// minimal floating-point helper for the numeric guidance (midpoint MPFR reals)
class MpReal {
 public:
  explicit MpReal(long prec = 100) : prec_(prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpReal(const MpReal& o) : prec_(o.prec_) { mpfr_init2(v_, prec_); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal& operator=(const MpReal& o) {
    mpfr_set_prec(v_, o.prec_);
    prec_ = o.prec_;
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  static MpReal from_interval(const IntervalReal& I, long prec) {
    MpReal r(prec);
    I.mid_mpfr(r.v_);
    return r;
  }
  static MpReal from_long(long x, long prec) {
    MpReal r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }

  MpReal operator+(const MpReal& o) const { return bin(o, mpfr_add); }
  MpReal operator-(const MpReal& o) const { return bin(o, mpfr_sub); }
  MpReal operator*(const MpReal& o) const { return bin(o, mpfr_mul); }
  MpReal operator/(const MpReal& o) const { return bin(o, mpfr_div); }
  bool operator<(const MpReal& o) const { return mpfr_cmp(v_, o.v_) < 0; }
  MpReal abs() const {
    MpReal r(prec_);
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpReal sqrt() const {
    MpReal r(prec_);
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpReal max(const MpReal& o) const { return *this < o ? o : *this; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  using Fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  MpReal bin(const MpReal& o, Fn f) const {
    MpReal r(std::max(prec_, o.prec_));
    f(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
  long prec_;
};

struct CPoint {
  MpReal x, y;
};

struct RMat {
  MpReal a, b, c, d;
};

RMat numeric_matrix(const GroupElement& g, long prec) {
  auto ev = [&](const LElem& e) { return MpReal::from_interval(eval_interval(e, prec), prec); };
  return {ev(g.a()), ev(g.b()), ev(g.c()), ev(g.d())};
}

CPoint apply(const RMat& m, const CPoint& z) {
  // (a z + b) / (c z + d), real matrix entries
  MpReal nx = m.a * z.x + m.b, ny = m.a * z.y;
  MpReal dx = m.c * z.x + m.d, dy = m.c * z.y;
  MpReal den = dx * dx + dy * dy;
  return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

// cosh d(z, w) - 1, monotone in the hyperbolic distance
MpReal cosh_proxy(const CPoint& z, const CPoint& w) {
  MpReal dx = z.x - w.x, dy = z.y - w.y;
  MpReal two = MpReal::from_long(2, 100);
  return (dx * dx + dy * dy) / (two * z.y * w.y);
}

MpReal finite_mid(const BoundaryPoint& p, long prec) {
  long q = prec;
  for (int tries = 0; tries < 20; ++tries) {
    IntervalReal I = p.eval(q);
    if (I.is_finite()) return MpReal::from_interval(I, prec);
    q *= 2;
  }
  throw PrecisionExhausted("could not evaluate endpoint for reduction guidance");
}

CPoint apex_point(const OrientedGeodesic& geo, long prec) {
  bool a_inf = geo.alpha.is_infinity(), b_inf = geo.beta.is_infinity();
  if (a_inf || b_inf) {
    MpReal x0 = finite_mid(a_inf ? geo.beta : geo.alpha, prec);
    MpReal th = MpReal::from_interval(theta_enclosure(prec), prec);
    MpReal two = MpReal::from_long(2, prec), one = MpReal::from_long(1, prec);
    return {x0, (two * th).max(one + x0.abs())};
  }
  MpReal a = finite_mid(geo.alpha, prec), b = finite_mid(geo.beta, prec);
  MpReal two = MpReal::from_long(2, prec);
  return {(a + b) / two, ((a - b) / two).abs()};
}

}  // namespace

namespace {

struct GuideCand {
  GroupElement g;
  RMat m;
};

// letters for the distance descent; g7 fixes tau7, so pure rotations never
// strictly improve and the rotated flips g2 g7^m are included directly
const std::vector<GuideCand>& guide_candidates(long prec) {
  static thread_local std::vector<GuideCand> cands;
  static thread_local long cands_prec = 0;
  if (cands_prec != prec) {
    cands.clear();
    cands_prec = prec;
    std::vector<GroupElement> elts = {gen_g2(),           gen_g2().inverse(),
                                      gen_g3(),           gen_g3().inverse(),
                                      gen_g7(),           gen_g7().inverse()};
    for (int m = -3; m <= 3; ++m)
      if (m != 0) elts.push_back(gen_g2() * g7_pow(m));
    for (const GroupElement& g : elts) cands.push_back({g, numeric_matrix(g, prec)});
  }
  return cands;
}

}  // namespace

GroupElement initial_reduce(const OrientedGeodesic& geo, const ReduceOptions& opt) {
  if (is_reduced(geo)) return GroupElement::identity();

  const long prec = opt.guide_prec;
  const auto& letters = guide_candidates(prec);

  GroupElement acc = GroupElement::identity();
  OrientedGeodesic cur = geo;
  const HeptagonData& H = HeptagonData::get();
  CPoint tau7{MpReal::from_interval(eval_interval(H.tau7.x, prec), prec),
              MpReal::from_interval(eval_interval(H.tau7.n, prec), prec).sqrt()};
  CPoint z = apex_point(geo, prec);

  long steps = 0;
  auto spend = [&](long n = 1) {
    steps += n;
    if (steps > opt.budget) throw BudgetExhausted("initial reduction budget exhausted");
  };
  auto move_by = [&](const GroupElement& g, const RMat& m) {
    z = apply(m, z);
    acc = g * acc;
    cur = transport(g, cur);
  };

  for (;;) {
    CrossingInfo ci = classify_crossing(cur);
    if (!ci.intersects) {
      MpReal cur_d = cosh_proxy(z, tau7);
      int best = -1;
      MpReal best_d = cur_d;
      for (size_t k = 0; k < letters.size(); ++k) {
        MpReal d = cosh_proxy(apply(letters[k].m, z), tau7);
        if (d < best_d) {
          best_d = d;
          best = int(k);
        }
      }
      if (best >= 0) {
        move_by(letters[size_t(best)].g, letters[size_t(best)].m);
        spend();
        continue;
      }
      // Greedy stalled: breadth-first search over short words for a strict
      // improvement; as a last resort classify every frontier transport
      // exactly (the apex is then numerically minimal, i.e. on or next to
      // the heptagon).
      struct Node {
        GroupElement g;
        RMat m;
        CPoint z;
        long depth;
      };
      std::deque<Node> queue;
      std::set<std::string> visited;
      auto key_of = [](const GroupElement& g) {
        std::string s;
        for (int k = 0; k < 6; ++k) {
          s += g.z()[k].get_str() + ";";
          s += g.w()[k].get_str() + ";";
        }
        return s;
      };
      RMat id_m = numeric_matrix(GroupElement::identity(), prec);
      queue.push_back({GroupElement::identity(), id_m, z, 0});
      visited.insert(key_of(GroupElement::identity()));
      bool improved = false;
      std::vector<Node> frontier;
      while (!queue.empty() && !improved) {
        Node n = queue.front();
        queue.pop_front();
        if (n.depth >= 5) continue;
        for (const auto& c : letters) {
          GroupElement g2 = c.g * n.g;
          if (!visited.insert(key_of(g2)).second) continue;
          CPoint z2 = apply(c.m, n.z);
          Node next{g2, RMat{c.m.a, c.m.b, c.m.c, c.m.d}, z2, n.depth + 1};
          if (cosh_proxy(z2, tau7) < best_d) {
            move_by(g2, id_m);
            z = z2;
            spend(n.depth + 1);
            improved = true;
            break;
          }
          queue.push_back(next);
          frontier.push_back(next);
        }
      }
      if (improved) continue;
      bool placed = false;
      for (const auto& n : frontier) {
        if (n.depth == 0) continue;
        OrientedGeodesic t = transport(n.g, cur);
        if (classify_crossing(t).intersects) {
          acc = n.g * acc;
          cur = t;
          z = n.z;
          placed = true;
          break;
        }
      }
      if (!placed)
        throw BudgetExhausted("reduction guidance stalled away from the heptagon");
      spend();
      continue;
    }
    if (ci.entry_edge != 0) {
      GroupElement rot = g7_pow(-ci.entry_edge);
      acc = rot * acc;
      cur = transport(rot, cur);
      spend();
      continue;
    }
    if (alpha_inside_c0(cur)) break;
    // enters from e_0 but |alpha| >= sqrt(eta): the c_0 / vertex cases of the
    // crossing lemma; one g3 puts the geodesic right (possibly after a rotation)
    acc = gen_g3() * acc;
    cur = transport(gen_g3(), cur);
    spend();
  }
  return acc.inverse();
}

}  // namespace gcf237
