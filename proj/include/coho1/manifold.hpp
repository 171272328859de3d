#pragma once

#include <optional>
#include <vector>

#include "coho1/equilibria.hpp"
#include "coho1/integrate.hpp"
#include "coho1/winding.hpp"

namespace coho1 {

inline constexpr double kConeTruncationRadius = 1e-8;
inline constexpr double kDefaultShootEpsilon = 1e-6;

// Everything needed to (re-)launch trajectories of one invariant-manifold
// family: the base point, an orthonormal frame of its tangent plane, the
// admissible angular arc, and the flow direction.
struct ShootContext {
  Dims dims{};
  FpLabel fp{};
  int direction = +1;            // -1 traces stable manifolds in reversed time
  double epsilon = kDefaultShootEpsilon;
  IntegratorConfig cfg{};
  std::array<double, 3> base{};  // fixed-point coordinates
  std::array<double, 3> ua{};    // in-cap unit vector
  std::array<double, 3> ub{};    // orthonormalized descent vector
  double psi_face = 0.0;         // boundary-tangent end of the interior arc
  bool mirrored = false;         // results reflected through Delta -> -Delta

  StateZdh offset_start(double psi) const;
};

struct ShootSpec {
  FpLabel fp{};
  double psi = -M_PI / 2;
  double epsilon = kDefaultShootEpsilon;
  IntegratorConfig cfg{};
};

// Builds the shooting context for M_i^+ (direction +1, from p1+/p2+) or
// M_i^- (direction -1, from p1-/p2-), locating the interior arc by bisection
// between the cap-tangent (psi -> -pi) and face-tangent directions.
ShootContext make_context(FpLabel fp, const Dims& dims, const IntegratorConfig& cfg,
                          double epsilon = kDefaultShootEpsilon);

// Trajectory from the offset start; integrator errors propagate.
Trajectory shoot(const ShootSpec& spec, const Dims& dims, const std::vector<EventSpec>& stop);

// Crossing of {H = h} for one shooting angle, mirrored if the context says so.
StateZdh shoot_to_h(const ShootContext& ctx, double psi, double h);

// Relative change of the crossing state under epsilon -> epsilon/2; the
// manifold-offset convergence check.
double shoot_epsilon_check(const ShootContext& ctx, double psi, double h);

struct SliceSample {
  double psi = 0.0;
  double z = 0.0;
  double delta = 0.0;
  double radius = 0.0;
  double angle = 0.0;  // unwrapped polar angle, continuous along the curve
  bool extension = false;
};

enum class ManifoldSide { m1p, m2p, m1m, m2m };
ManifoldSide manifold_side_from_name(const std::string& name);  // "m1+", ...
const char* manifold_side_name(ManifoldSide side);

// One slice M_i^+- intersected with {H = h}, sampled adaptively in the
// shooting angle until adjacent polar-angle gaps < 0.1 rad and chords < 0.01.
// Samples run from the boundary end into the spiral; the spiral is truncated
// at radius 1e-8 around the cone axis.
struct SliceCurve {
  Dims dims{};
  double h = 0.0;
  ManifoldSide side{};
  ShootContext ctx{};
  std::vector<SliceSample> samples;
  bool reaches_boundary = false;
  bool spirals_to_cone = false;
  size_t shot_begin = 0;  // index of the first non-extension sample

  PlanarCurve to_planar(bool origin_capped = true) const;
  double total_angle() const {
    return samples.empty() ? 0.0 : samples.back().angle - samples.front().angle;
  }
};

SliceCurve slice_curve(ManifoldSide side, double h, const Dims& dims,
                       const IntegratorConfig& cfg, int min_samples = 64,
                       double epsilon = kDefaultShootEpsilon);

// Serial reference for the parallel psi sweep inside slice_curve.
SliceCurve slice_curve_serial(ManifoldSide side, double h, const Dims& dims,
                              const IntegratorConfig& cfg, int min_samples = 64,
                              double epsilon = kDefaultShootEpsilon);

// Prepends the boundary arc from the q-point of the slice to the curve's
// boundary endpoint, staying in the half-plane of the base point's Z sign.
// The extended curve starts at angle -pi/2 (respectively +pi/2 mirrored).
SliceCurve extend_to_q(const SliceCurve& curve);

// The cap trajectory from p_i^+ into the cone point, with its unwrapped
// rotation history.
struct RicciFlatRun {
  Trajectory traj;
  double angle_entry = 0.0;                  // polar angle at the start
  double angle_total = 0.0;                  // unwrapped gain over the run
  std::vector<std::pair<double, double>> angle_at_radius;  // (radius, unwrapped angle)
  double final_volume = 0.0;                 // F at the terminal sample
  // Tangent-direction estimate at the cone: unwrapped angle extrapolated in
  // 1/|log r| to r -> 0, reported modulo pi.
  double limit_angle_mod_pi = 0.0;
};

RicciFlatRun ricci_flat(int i, const Dims& dims, const IntegratorConfig& cfg,
                        double epsilon = kDefaultShootEpsilon);

// I_c bookkeeping: trajectories that enter {F >= c, H >= 0} must keep F >= c
// until H crosses zero.
struct FunnelSpec {
  double c = 0.0;
};

bool funnel_invariant_holds(const Trajectory& traj, const Dims& dims, const FunnelSpec& spec);

}  // namespace coho1
