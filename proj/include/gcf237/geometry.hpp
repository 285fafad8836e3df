#pragma once

#include <array>
#include <optional>

#include "gcf237/numeric_expr.hpp"
#include "gcf237/quad.hpp"
#include "gcf237/quaternion.hpp"

namespace gcf237 {

// Point of the boundary circle R cup {inf}.  Numeric points are stored as an
// exact Moebius matrix (entries in L) applied to a base constant, so they can
// be re-evaluated at any precision without accumulated interval error.
class BoundaryPoint {
 public:
  enum class Kind { Infinity, Exact, Numeric };

  static BoundaryPoint infinity();
  static BoundaryPoint exact(QuadVal v);
  static BoundaryPoint exact_L(LElem v);
  static BoundaryPoint numeric(NumericPtr base);

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_numeric() const { return kind_ == Kind::Numeric; }

  const QuadVal& exact_value() const;
  // finite value enclosure; whole line when undecided at this precision
  IntervalReal eval(long prec) const;

  // applies [[a,b],[c,d]]; exact points stay exact, numeric points compose
  // the matrix exactly
  BoundaryPoint moebius(const LElem& a, const LElem& b, const LElem& c, const LElem& d) const;

  bool same_exact(const BoundaryPoint& o) const;  // exact equality (Exact/Infinity kinds)

 private:
  Kind kind_ = Kind::Infinity;
  QuadVal val_;
  NumericPtr base_;
  std::array<LElem, 4> mob_;  // a, b, c, d
};

// Provenance of a geodesic built from quadratic data (z, w, sign); lets the
// engine run the expansion on exact quaternion states.
struct QuadProvenance {
  LElem z, w;
  int sign = 1;  // alpha = (z - conj z + sign*sqrt(D)) / (2w)
  FElem D;
  bool beta_is_conjugate = true;
};

// Oriented geodesic from beta (repelling) to alpha (attracting).
struct OrientedGeodesic {
  BoundaryPoint beta, alpha;
  std::optional<QuadProvenance> prov;
};

OrientedGeodesic transport(const GroupElement& g, const OrientedGeodesic& geo);
BoundaryPoint mobius(const GroupElement& g, const BoundaryPoint& p);

// Vertex of the tessellation: x = Re V, n = |V|^2, both in L; derived from the
// fixed-point quadratic c X^2 + (d-a) X - b of an elliptic element.
struct VertexData {
  LElem x, n;
};

// The fundamental heptagon D = union of g7^i F, i = 0..6: vertices
// V_i = g7^i tau3, edges e_i = [V_i, V_{i+1}) on the geodesic
// c_i = g7^i c_0 with c_0 joining -theta to theta.  e_i' = (V_i, V_{i+1}].
struct HeptagonData {
  std::array<VertexData, 7> vertex;           // V_i
  std::array<LElem, 7> edge_p, edge_q;        // c_i endpoints g7^i(-theta), g7^i(theta)
  std::array<LElem, 7> edge_sum, edge_prod;   // p+q and p*q per edge
  std::array<int, 7> center_side;             // side of tau7 w.r.t. c_i
  VertexData tau7, tau2, tau3, tau3p;

  static const HeptagonData& get();  // built and verified once
};

// Sign of n_V - (alpha+beta) x_V + alpha*beta for a semicircle geodesic
// (squared distance of V to the Euclidean center minus squared radius);
// sign(x_V - x_0) for a vertical geodesic through x_0.  0 iff V lies on the
// geodesic.  Throws PrecisionExhausted on numeric ties.
int side_of_vertex(const VertexData& v, const OrientedGeodesic& geo);

// How the geodesic meets the heptagon.
struct CrossingInfo {
  bool intersects = false;
  int entry_edge = -1;  // P in e_{entry_edge}
  int exit_edge = -1;   // Q in e'_{exit_edge}
  int entry_vertex = -1, exit_vertex = -1;  // >= 0 when the crossing is a vertex
};

CrossingInfo classify_crossing(const OrientedGeodesic& geo);

// Def. of reducedness: enters D from e_0 and |alpha| < sqrt(eta).
bool is_reduced(const OrientedGeodesic& geo);

// Unique i != 0 with the reduced geodesic leaving D from e_i'; reported in the
// balanced alphabet {+-1, +-2, +-3} (7-k <-> -k).
int exit_edge(const OrientedGeodesic& geo);

struct ReduceOptions {
  long budget = 5000;      // generator applications before giving up
  long guide_prec = 100;   // floating guidance precision (bits)
};

// B_0 with is_reduced(B_0^{-1} geo); identity iff geo is already reduced.
GroupElement initial_reduce(const OrientedGeodesic& geo, const ReduceOptions& opt = {});

int balanced_digit(int edge_index);    // 0..6 -> {0, +-1, +-2, +-3}
int edge_index_of_digit(int digit);    // inverse

}  // namespace gcf237
