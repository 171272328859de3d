#pragma once

#include <array>
#include <cmath>

#include "coho1/dims.hpp"

namespace coho1 {

inline constexpr double kLocusTol = 1e-9;  // default tolerance for locus membership

// Phase point in the reduced (Z, Delta, H) coordinates. Z measures the
// imbalance (d1-1)Y1^2 - (d2-1)Y2^2 of the orbit shape, Delta = X1 - X2 the
// principal-curvature split, H the rescaled mean curvature.
struct StateZdh {
  double z = 0.0;
  double delta = 0.0;
  double h = 0.0;

  std::array<double, 3> as_array() const { return {z, delta, h}; }
  static StateZdh from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
};

struct StateYdh {
  double y1 = 0.0;
  double y2 = 0.0;
  double delta = 0.0;
  double h = 0.0;
};

struct StateXyh {
  double x1 = 0.0;
  double x2 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double h = 0.0;
};

// Defining inequalities of the flow-invariant region S, written as
// face(state) <= 0. Face A is where Y2 = 0 (smooth collapse side of S^{d1}),
// face B where Y1 = 0.
inline double face_a(const StateZdh& s, const Dims& d) {
  const double n = d.n();
  return d.d1 * s.z + (d.d1 * d.d2 / n) * s.delta * s.delta - (n - 1) / n;
}

inline double face_b(const StateZdh& s, const Dims& d) {
  const double n = d.n();
  return -d.d2 * s.z + (d.d1 * d.d2 / n) * s.delta * s.delta - (n - 1) / n;
}

struct Membership {
  bool interior = false;
  bool face_a = false;
  bool face_b = false;
  bool top_cap = false;
  bool bottom_cap = false;
  bool outside = false;

  bool boundary() const { return face_a || face_b || top_cap || bottom_cap; }
};

// Classifies a point against the three defining inequalities of S.
// Several flags may be active at once (the q-points sit on both quadratic
// faces and one cap).
Membership membership(const StateZdh& s, const Dims& d, double tol = kLocusTol);

inline bool in_locus(const StateZdh& s, const Dims& d, double tol = kLocusTol) {
  return !membership(s, d, tol).outside;
}

// Recovers (Y1, Y2) from a point of S via the constraint equation.
// Radicands within [-tol, 0] are clamped to zero so drift near the boundary
// faces does not abort long integrations.
StateYdh recover_y(const StateZdh& s, const Dims& d, double tol = kLocusTol);

// Splits Delta into the principal curvatures X1, X2 with d1 X1 + d2 X2 = H
// enforced exactly by construction.
StateXyh split_delta(const StateYdh& s, const Dims& d);

inline StateZdh to_zdh(const StateYdh& s, const Dims& d) {
  return {(d.d1 - 1) * s.y1 * s.y1 - (d.d2 - 1) * s.y2 * s.y2, s.delta, s.h};
}

inline StateZdh to_zdh(const StateXyh& s, const Dims& d) {
  return {(d.d1 - 1) * s.y1 * s.y1 - (d.d2 - 1) * s.y2 * s.y2, s.x1 - s.x2, s.h};
}

// Constraint residual; zero on the Einstein locus.
inline double s1_residual(const StateYdh& s, const Dims& d) {
  const double n = d.n();
  return d.d1 * (d.d1 - 1) * s.y1 * s.y1 + d.d2 * (d.d2 - 1) * s.y2 * s.y2 +
         (d.d1 * d.d2 / n) * s.delta * s.delta - (n - 1) / n;
}

inline double s1_residual(const StateXyh& s, const Dims& d) {
  const double n = d.n();
  return d.d1 * s.x1 * s.x1 + d.d2 * s.x2 * s.x2 + d.d1 * (d.d1 - 1) * s.y1 * s.y1 +
         d.d2 * (d.d2 - 1) * s.y2 * s.y2 - s.h * s.h / n - (n - 1) / n;
}

inline double s2_residual(const StateXyh& s, const Dims& d) {
  return d.d1 * s.x1 + d.d2 * s.x2 - s.h;
}

// Monotone volume functional; proportional to Y1^{2 d1} Y2^{2 d2}.
// Grows along the flow while H >= 0 and is constant on the cone solution.
double volume_f(const StateZdh& s, const Dims& d, double tol = kLocusTol);

inline double volume_f_cone(const Dims& d) {
  const double n = d.n();
  return std::pow((n - 1) / n, d.n());
}

// Reflection fixing each slice {H = h}.
inline StateZdh bar_involution(const StateZdh& s) { return {s.z, -s.delta, s.h}; }

// Time-reversal symmetry of the flow.
inline StateZdh sigma_symmetry(const StateZdh& s) { return {s.z, -s.delta, -s.h}; }

inline double radius_zd(const StateZdh& s) { return std::hypot(s.z, s.delta); }
inline double angle_zd(const StateZdh& s) { return std::atan2(s.delta, s.z); }

}  // namespace coho1
