#include "gcf237/engine.hpp"

#include <cassert>

namespace gcf237 {

namespace {

void append_rat(std::string& s, const Rat& q) {
  s += q.get_num().get_str(32);
  s += ':';
  s += q.get_den().get_str(32);
  s += ';';
}

void append_L(std::string& s, const LElem& x) {
  for (int k = 0; k < 6; ++k) append_rat(s, x[k]);
}

std::string key_of_zw(const ZWMat& m) {
  std::string s;
  s.reserve(128);
  append_L(s, m.z);
  append_L(s, m.w);
  return s;
}

std::string key_of_point(const BoundaryPoint& p) {
  if (p.is_infinity()) return "I";
  std::string s = "E";
  append_L(s, p.exact_value().u());
  append_L(s, p.exact_value().v());
  return s;
}

BoundaryPoint root_point(const ZWMat& th, int s, const FElem& D) {
  LElem delta = th.z - th.z.conj();
  if (th.w.is_zero()) {
    int sd = delta.sign();
    if (sd == 0) throw DomainError("degenerate quadratic data");
    bool plus_is_inf = sd > 0;
    if ((s > 0) == plus_is_inf) return BoundaryPoint::infinity();
    return BoundaryPoint::exact_L(LElem());
  }
  LElem winv2 = (th.w + th.w).inv();
  return BoundaryPoint::exact(QuadVal(delta * winv2, s > 0 ? winv2 : -winv2, D));
}

long minimal_rotation(const std::vector<int>& digits, long m, long l) {
  for (long d = 1; d <= l; ++d) {
    if (l % d != 0) continue;
    bool ok = true;
    for (long t = 0; t < l && ok; ++t)
      ok = digits[size_t(m + t)] == digits[size_t(m + (t + d) % l)];
    if (ok) return d;
  }
  return l;
}

}  // namespace

FElem discriminant(const QuadraticInput& q) {
  LElem delta = q.z - q.z.conj();
  FElem d2 = (delta * delta).to_F();
  FElem nw = (q.w * q.w.conj()).to_F();
  return d2 + FElem(4) * FElem::eta() * nw;
}

OrientedGeodesic from_quadratic(const QuadraticInput& q) {
  if (q.sign != 1 && q.sign != -1) throw DomainError("sign must be + or -");
  FElem D = discriminant(q);
  if (D.sign() <= 0) throw DomainError("D_{z,w} <= 0: the extension is imaginary");
  ZWMat th{q.z, q.w};
  OrientedGeodesic g;
  g.alpha = root_point(th, q.sign, D);
  g.beta = root_point(th, -q.sign, D);
  g.prov = QuadProvenance{q.z, q.w, q.sign, D, true};
  return g;
}

// ---------------------------------------------------------------------------

struct ExpansionSession::ThetaState {
  ZWMat th;            // B_k^{-1} theta_0 B_k
  int sigma;           // alpha_k = sigma-root of th
  FElem D;
  BoundaryPoint beta;  // tracked separately in the beta-free case
  ZWMat th_orig;       // theta_0, for the stabilizer check
};

ExpansionSession::ExpansionSession(OrientedGeodesic geo, SessionConfig cfg)
    : geo_(std::move(geo)), cfg_(std::move(cfg)) {
  run();
}

void ExpansionSession::run() {
  NumericConfigGuard guard(cfg_.numeric);

  if (geo_.alpha.is_exact() && geo_.beta.is_exact()) {
    if ((geo_.alpha.exact_value() - geo_.beta.exact_value()).sign() == 0)
      throw DomainError("alpha and beta coincide");
  } else if (geo_.alpha.is_infinity() && geo_.beta.is_infinity()) {
    throw DomainError("alpha and beta coincide");
  }

  GroupElement b0;
  if (cfg_.b0_override) {
    b0 = word_to_element(*cfg_.b0_override);
    if (!is_reduced(transport(b0.inverse(), geo_)))
      throw DomainError("b0 override does not reduce the input geodesic");
  } else {
    b0 = initial_reduce(geo_, cfg_.reduce);
  }
  res_.b0 = b0;
  Bs_ = {b0};

  bool numeric = geo_.alpha.is_numeric() || geo_.beta.is_numeric();
  if (numeric) {
    run_numeric(transport(b0.inverse(), geo_));
    return;
  }

  // synthesize quadratic data for the (0, inf)/(inf, 0) input pattern
  std::optional<QuadProvenance> prov = geo_.prov;
  if (!prov) {
    auto is_zero_pt = [](const BoundaryPoint& p) {
      return p.is_exact() && p.exact_value().sign() == 0;
    };
    if (geo_.alpha.is_infinity() && is_zero_pt(geo_.beta))
      prov = QuadProvenance{LElem::theta(), LElem(), 1, FElem(4) * FElem::eta(), true};
    else if (geo_.beta.is_infinity() && is_zero_pt(geo_.alpha))
      prov = QuadProvenance{LElem::theta(), LElem(), -1, FElem(4) * FElem::eta(), true};
  }

  if (prov) {
    geo_.prov = prov;  // unit extraction and stabilizer checks read it back
    res_.D = prov->D;
    ThetaState st;
    st.th_orig = ZWMat{prov->z, prov->w};
    ZWMat binv = b0.inverse().mat();
    st.th = binv.mul(st.th_orig).mul(b0.mat());
    st.sigma = prov->sign;
    st.D = prov->D;
    bool closed = prov->beta_is_conjugate;
    if (!closed) st.beta = mobius(b0.inverse(), geo_.beta);
    run_theta(std::move(st), closed);
    return;
  }
  run_generic(transport(b0.inverse(), geo_));
}

void ExpansionSession::run_numeric(const OrientedGeodesic& g0) {
  OrientedGeodesic cur = g0;
  for (long k = 0; k < cfg_.max_digits; ++k) {
    CrossingInfo ci = classify_crossing(cur);
    if (!ci.intersects || ci.entry_edge != 0)
      throw std::logic_error("expansion step lost reducedness");
    int digit = balanced_digit(ci.exit_edge);
    res_.digits.push_back(digit);
    GroupElement A = digit_matrix(digit);
    cur = transport(A.inverse(), cur);
    Bs_.push_back(Bs_.back() * A);
  }
  res_.status = ExpStatus::NumericStream;
}

void ExpansionSession::run_theta(ThetaState st, bool closed) {
  std::unordered_map<std::string, long> seen;
  struct Pending {
    long m = 0, k = 0, l = 0;
  };
  Pending pending;
  bool has_pending = false;

  for (long k = 0; k < cfg_.max_digits; ++k) {
    std::string key = key_of_zw(st.th);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (closed) {
        finalize_periodic(it->second, k - it->second);
        return;
      }
      if (!has_pending) {
        pending = Pending{it->second, k, k - it->second};
        has_pending = true;
      }
      it->second = k;
    } else {
      seen.emplace(std::move(key), k);
    }

    OrientedGeodesic cur;
    cur.alpha = root_point(st.th, st.sigma, st.D);
    cur.beta = closed ? root_point(st.th, -st.sigma, st.D) : st.beta;
    CrossingInfo ci = classify_crossing(cur);
    if (!ci.intersects || ci.entry_edge != 0)
      throw std::logic_error("expansion step lost reducedness");
    int digit = balanced_digit(ci.exit_edge);
    res_.digits.push_back(digit);
    GroupElement A = digit_matrix(digit);
    ZWMat Ainv = A.inverse().mat();
    st.th = Ainv.mul(st.th).mul(A.mat());
    if (!closed) st.beta = mobius(A.inverse(), st.beta);
    Bs_.push_back(Bs_.back() * A);

    if (has_pending && long(res_.digits.size()) >= pending.k + pending.l) {
      bool match = true;
      for (long t = 0; t < pending.l && match; ++t)
        match = res_.digits[size_t(pending.m + t)] == res_.digits[size_t(pending.k + t)];
      if (match) {
        long m = pending.m, l = pending.l;
        long l0 = minimal_rotation(res_.digits, m, l);
        long k0 = m;
        while (k0 > 0 && res_.digits[size_t(k0 - 1)] == res_.digits[size_t(k0 - 1 + l0)]) --k0;
        GroupElement g = B(k0 + l0) * B(k0).inverse();
        if (verify_gamma0(g)) {
          finalize_periodic(m, l);
          return;
        }
      }
      has_pending = false;
    }
  }
  res_.status = ExpStatus::BudgetExhausted;
}

void ExpansionSession::run_generic(OrientedGeodesic cur) {
  std::unordered_map<std::string, long> seen;
  for (long k = 0; k < cfg_.max_digits; ++k) {
    std::string key = key_of_point(cur.alpha) + "|" + key_of_point(cur.beta);
    auto it = seen.find(key);
    if (it != seen.end()) {
      finalize_periodic(it->second, k - it->second);
      return;
    }
    seen.emplace(std::move(key), k);

    CrossingInfo ci = classify_crossing(cur);
    if (!ci.intersects || ci.entry_edge != 0)
      throw std::logic_error("expansion step lost reducedness");
    int digit = balanced_digit(ci.exit_edge);
    res_.digits.push_back(digit);
    GroupElement A = digit_matrix(digit);
    cur = transport(A.inverse(), cur);
    Bs_.push_back(Bs_.back() * A);
  }
  res_.status = ExpStatus::BudgetExhausted;
}

bool ExpansionSession::verify_gamma0(const GroupElement& g) const {
  if (g.nrd() != FElem(1)) return false;
  if (g.is_pm_identity()) return false;
  if (geo_.prov) {
    ZWMat th0{geo_.prov->z, geo_.prov->w};
    return g.mat().mul(th0) == th0.mul(g.mat());
  }
  // fixes both original endpoints
  BoundaryPoint ga = mobius(g, geo_.alpha);
  BoundaryPoint gb = mobius(g, geo_.beta);
  auto fixes = [](const BoundaryPoint& p, const BoundaryPoint& q) {
    if (p.is_infinity() || q.is_infinity()) return p.is_infinity() && q.is_infinity();
    return (p.exact_value() - q.exact_value()).sign() == 0;
  };
  return fixes(ga, geo_.alpha) && fixes(gb, geo_.beta);
}

void ExpansionSession::finalize_periodic(long m, long l) {
  long l0 = minimal_rotation(res_.digits, m, l);
  long k0 = m;
  while (k0 > 0 && res_.digits[size_t(k0 - 1)] == res_.digits[size_t(k0 - 1 + l0)]) --k0;
  res_.preperiod = k0;
  res_.period = l0;
  res_.status = ExpStatus::Periodic;
  GroupElement g = B(k0 + l0) * B(k0).inverse();
  if (!verify_gamma0(g)) throw std::logic_error("period matrix fails the stabilizer check");
  res_.gamma0 = g;
  if (geo_.prov) {
    res_.epsilon0 = rho_alpha(g, *geo_.prov);
  } else if (geo_.alpha.is_exact() && !geo_.alpha.exact_value().is_L()) {
    // best effort for hand-built exact inputs
    const QuadVal& a = geo_.alpha.exact_value();
    QuadVal r = QuadVal(g.c()) * a + QuadVal(g.d());
    if (r.u().is_F() && r.v().is_F()) {
      res_.epsilon0 = std::make_pair(r.u().to_F(), r.v().to_F());
      res_.D = a.D();
    }
  }
}

int ExpansionSession::digit(long t) {
  if (t < 0) throw DomainError("digit index out of range");
  if (t < long(res_.digits.size())) return res_.digits[size_t(t)];
  if (res_.status != ExpStatus::Periodic)
    throw DomainError("digit index beyond the computed budget");
  long k0 = res_.preperiod, l0 = res_.period;
  return res_.digits[size_t(k0 + (t - k0) % l0)];
}

GroupElement ExpansionSession::B(long k) {
  if (k < 0) throw DomainError("index out of range");
  while (long(Bs_.size()) <= k) {
    long t = long(Bs_.size()) - 1;  // next step consumes digit i_{t+1}
    Bs_.push_back(Bs_.back() * digit_matrix(digit(t)));
  }
  return Bs_[size_t(k)];
}

BoundaryPoint ExpansionSession::convergent_reg(long k) {
  return mobius(B(k), BoundaryPoint::exact_L(LElem()));
}

BoundaryPoint ExpansionSession::convergent_trad(long k) {
  return mobius(B(k + 1), BoundaryPoint::infinity());
}

std::pair<BoundaryPoint, BoundaryPoint> ExpansionSession::boundary_arc(long k) {
  GroupElement Bk = B(k);
  return {mobius(Bk, BoundaryPoint::exact_L(-LElem::theta())),
          mobius(Bk, BoundaryPoint::exact_L(LElem::theta()))};
}

ExpansionResult expand(const OrientedGeodesic& geo, const SessionConfig& cfg) {
  return ExpansionSession(geo, cfg).result();
}

std::pair<FElem, FElem> rho_alpha(const GroupElement& g, const QuadProvenance& prov) {
  FElem a, b;
  if (prov.w.is_zero()) {
    LElem delta = prov.z - prov.z.conj();
    FElem half_delta_coeff = delta.odd_part();  // delta = (2 O_z) theta, this is 2 O_z
    int s = half_delta_coeff.sign();
    if (s == 0) throw DomainError("degenerate quadratic data");
    bool alpha_is_inf = (prov.sign > 0) == (s > 0);
    LElem t = alpha_is_inf ? g.z() : g.z().conj();
    a = t.even_part();
    // theta = sqrt(D) / |2 O_z|
    b = t.odd_part() * (s > 0 ? half_delta_coeff : -half_delta_coeff).inv();
  } else {
    LElem delta = prov.z - prov.z.conj();
    LElem winv2 = (prov.w + prov.w).inv();
    // rho(g) = w_g * alpha + conj(z_g), alpha = delta/(2w) + sign*sqrt(D)/(2w)
    LElem p = g.w() * (delta * winv2) + g.z().conj();
    LElem q = g.w() * (prov.sign > 0 ? winv2 : -winv2);
    if (!p.is_F() || !q.is_F())
      throw DomainError("rho_alpha image has a nonvanishing odd part: not a stabilizer");
    a = p.to_F();
    b = q.to_F();
  }
  if (a * a - b * b * prov.D != g.nrd())
    throw std::logic_error("rho_alpha norm mismatch");
  return {a, b};
}

GroupElement fundamental_unit(const ExpansionSession& s) {
  const ExpansionResult& r = s.result();
  if (r.status != ExpStatus::Periodic || !r.gamma0)
    throw DomainError("fundamental unit requires a periodic expansion");
  const GroupElement& g = *r.gamma0;
  if (g.nrd() != FElem(1)) throw std::logic_error("gamma0 reduced norm != 1");
  if (!in_order(QuatElem::from_zw(g.mat()))) throw std::logic_error("gamma0 outside the order");
  if (!is_hyperbolic(g)) throw std::logic_error("gamma0 not hyperbolic");
  if (g.is_pm_identity()) throw std::logic_error("gamma0 = +-1");
  return g;
}

std::vector<CFTerm> cf_coefficients(const std::vector<int>& digits) {
  const DigitConstants& dc = DigitConstants::get();
  std::vector<CFTerm> out;
  out.reserve(digits.size());
  for (int d : digits) out.push_back({dc.a(d), dc.b(d), dc.c(d)});
  return out;
}

bool quad_f_equal(const FElem& a1, const FElem& b1, const FElem& d1, const FElem& a2,
                  const FElem& b2, const FElem& d2) {
  if (a1 != a2) return false;
  if (b1.sign() != b2.sign()) return false;
  return b1 * b1 * d1 == b2 * b2 * d2;
}

bool unit_equal_up_to_sign_inversion(const std::pair<FElem, FElem>& eps, const FElem& D,
                                     const FElem& ta, const FElem& tb, const FElem& td) {
  // candidates: +-eps, +-eps^{-1} = +-(a - b sqrt D) for norm-one eps
  const FElem& a = eps.first;
  const FElem& b = eps.second;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      FElem ca = s1 > 0 ? a : -a;
      FElem cb = (s1 * s2) > 0 ? b : -b;
      if (quad_f_equal(ca, cb, D, ta, tb, td)) return true;
    }
  return false;
}

}  // namespace gcf237
