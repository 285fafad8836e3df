#pragma once

#include <unordered_map>
#include <vector>

#include "gcf237/geometry.hpp"
#include "gcf237/order.hpp"

namespace gcf237 {

// Quadratic data (z, w, sign): alpha = (z - conj z + sign*sqrt(D))/(2w) with
// D = (z - conj z)^2 + 4 eta w conj(w); beta is the other root.  w = 0 uses
// the conventions (alpha, beta) = (inf, 0) for sign + and (0, inf) for -.
struct QuadraticInput {
  LElem z, w;
  int sign = 1;
};

FElem discriminant(const QuadraticInput& q);
OrientedGeodesic from_quadratic(const QuadraticInput& q);  // throws on D <= 0

enum class ExpStatus { Periodic, BudgetExhausted, NumericStream };

struct SessionConfig {
  long max_digits = 10000;
  std::optional<Word> b0_override;
  ReduceOptions reduce;
  NumericConfig numeric;
};

struct ExpansionResult {
  GroupElement b0;
  std::vector<int> digits;  // i_1, i_2, ... in the balanced alphabet
  ExpStatus status = ExpStatus::BudgetExhausted;
  long preperiod = -1;  // k0 (when Periodic)
  long period = -1;     // minimal l0 (when Periodic)
  std::optional<GroupElement> gamma0;               // B_{k0+l0} B_{k0}^{-1}
  std::optional<std::pair<FElem, FElem>> epsilon0;  // rho_alpha(gamma0) = a + b sqrt(D)
  std::optional<FElem> D;
};

// One expansion; strictly sequential.  Holds the prefix matrices B_k so
// convergents and boundary arcs can be queried afterwards (extended
// periodically past the detection point for periodic sessions).
class ExpansionSession {
 public:
  explicit ExpansionSession(OrientedGeodesic geo, SessionConfig cfg = {});

  const ExpansionResult& result() const { return res_; }
  const OrientedGeodesic& input() const { return geo_; }
  const SessionConfig& config() const { return cfg_; }

  long digits_computed() const { return long(res_.digits.size()); }
  int digit(long t);         // i_{t+1} (0-based t); periodic extension when available
  GroupElement B(long k);    // B_k = B_0 A_1 ... A_k
  BoundaryPoint convergent_reg(long k);   // x_k^reg = B_k 0
  BoundaryPoint convergent_trad(long k);  // x_k^trad = B_{k+1} inf
  // endpoints of the boundary arc of B_k S_0: (B_k(-theta), B_k(theta))
  std::pair<BoundaryPoint, BoundaryPoint> boundary_arc(long k);

 private:
  void run();
  void run_numeric(const OrientedGeodesic& g0);
  struct ThetaState;
  void run_theta(ThetaState st, bool closed);
  void run_generic(OrientedGeodesic cur);
  void finalize_periodic(long m, long l);
  bool verify_gamma0(const GroupElement& g) const;

  OrientedGeodesic geo_;
  SessionConfig cfg_;
  ExpansionResult res_;
  std::vector<GroupElement> Bs_;  // Bs_[k] = B_k
};

ExpansionResult expand(const OrientedGeodesic& geo, const SessionConfig& cfg = {});

// The field isomorphism (q r; s t) -> s*alpha + t into F(sqrt(D)), for g in
// the stabilizer of the session geodesic.  Throws DomainError when the image
// has a nonvanishing odd theta-part (g does not stabilize the geodesic).
std::pair<FElem, FElem> rho_alpha(const GroupElement& g, const QuadProvenance& prov);

// gamma0 of a periodic result, re-verified: nrd = 1, in the Hurwitz order,
// hyperbolic, fixes alpha, and != +-1.
GroupElement fundamental_unit(const ExpansionSession& s);

struct CFTerm {
  LElem a, b, c;
};
std::vector<CFTerm> cf_coefficients(const std::vector<int>& digits);
// nested-fraction rendering; specializes the alternating (1,-1) pattern to the
// simplified shape with leading term and repeated numerator/denominator
std::string render_cf_text(const std::vector<int>& digits, long depth);

// a1 + b1 sqrt(d1) == a2 + b2 sqrt(d2) as real numbers (d1, d2 > 0)
bool quad_f_equal(const FElem& a1, const FElem& b1, const FElem& d1, const FElem& a2,
                  const FElem& b2, const FElem& d2);
// equality up to sign and inversion for norm-one units
bool unit_equal_up_to_sign_inversion(const std::pair<FElem, FElem>& eps, const FElem& D,
                                     const FElem& ta, const FElem& tb, const FElem& td);

}  // namespace gcf237
