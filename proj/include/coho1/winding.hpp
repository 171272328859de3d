#pragma once

#include <array>
#include <vector>

#include "coho1/errors.hpp"

namespace coho1 {

using Pt2 = std::array<double, 2>;

// Polyline in the punctured plane. `ends_at_origin` marks curves limiting
// into the origin; only then may the final vertex be (0,0).
struct PlanarCurve {
  std::vector<Pt2> vertices;
  bool ends_at_origin = false;
  // Producers with dense angular data (slice curves) may be auto-subdivided
  // when a single turn approaches pi; raw user polylines are not.
  bool dense_producer = false;
};

// Total winding angle around the origin: the sum of signed vertex-to-vertex
// turns. Requires every turn magnitude < pi; violations raise
// AmbiguousUnwrap unless the producer is dense, in which case circular-arc
// interpolants are inserted.
double winding_angle(const PlanarCurve& c);

// Winding of truncations of an origin-bound curve at a decreasing radius
// ladder (default 1e-2 .. 1e-8).
struct WindingLimitReport {
  std::vector<double> radii;
  std::vector<double> theta;  // winding of the truncation at radii[k]

  // Certified lower bound in the truncation sense: every computed
  // truncation satisfies theta >= c.
  bool certified_at_least(double c) const {
    for (double t : theta)
      if (!(t >= c)) return false;
    return !theta.empty();
  }
  double tail() const { return theta.empty() ? 0.0 : theta.back(); }
};

WindingLimitReport winding_limit(const PlanarCurve& c, std::vector<double> radii = {});

// Guaranteed number of pairwise intersections from a winding-difference of
// theta0: max(0, ceil(theta0 / 2 pi) - 1).
int min_intersections(double theta0);

// All transversal segment-segment intersection points of two polylines,
// deduplicated at 1e-10. Tangential touches and shared endpoints are
// excluded unless include_tangential is set. Runs the segment-pair scan in
// parallel with a deterministic merge order.
std::vector<Pt2> brute_intersections(const PlanarCurve& a, const PlanarCurve& b,
                                     bool include_tangential = false);

// Serial reference implementation of the same scan, kept for testing the
// parallel kernel against.
std::vector<Pt2> brute_intersections_serial(const PlanarCurve& a, const PlanarCurve& b,
                                            bool include_tangential = false);

// Filtered orientation predicate: sign of (q-p) x (r-p) with a floating-point
// error filter and a long-double fallback; returns 0 only for (near-)exact
// degeneracies far below the dedup scale.
int orient2d(const Pt2& p, const Pt2& q, const Pt2& r);

// True self-intersection test via the brute-force oracle on one curve.
bool has_self_intersections(const PlanarCurve& c);

}  // namespace coho1
