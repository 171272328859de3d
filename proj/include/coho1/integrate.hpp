#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coho1/rhs.hpp"
#include "coho1/rk45.hpp"
#include "coho1/state.hpp"

namespace coho1 {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double min_step = 1e-14;
  long max_steps = 10'000'000;
  double locus_margin = 1e-6;  // tolerated transgression of S before LeftLocus
  bool check_locus = true;
  bool store_dense = true;  // keep per-step dense coefficients (off for bulk sweeps)

  RkOpts rk() const { return {rel_tol, abs_tol, max_step, min_step, max_steps}; }
};

enum class EventKind { HCrossing, NearPoint, ExitLocus, SLimit, ArcCap };

struct EventSpec {
  EventKind kind;
  double value = 0.0;    // h target / radius / margin / s cap / angle cap
  StateZdh center{};     // NearPoint only

  static EventSpec h_crossing(double h) { return {EventKind::HCrossing, h, {}}; }
  static EventSpec near_point(const StateZdh& c, double radius) {
    return {EventKind::NearPoint, radius, c};
  }
  static EventSpec exit_locus(double margin) { return {EventKind::ExitLocus, margin, {}}; }
  static EventSpec s_limit(double s_max) { return {EventKind::SLimit, s_max, {}}; }
  static EventSpec arc_cap(double angle) { return {EventKind::ArcCap, angle, {}}; }
};

struct EventHit {
  EventKind kind = EventKind::SLimit;
  int index = -1;      // position in the requested event list
  double s = 0.0;
  StateZdh state{};
};

// Immutable record of one integration run. `s` is the internal time of the
// run and always increases; for reversed runs it measures arclength of the
// time-reversed flow.
struct Trajectory {
  Dims dims{};
  int direction = +1;  // +1 follows the flow, -1 the time-reversed flow
  std::vector<std::pair<double, StateZdh>> samples;  // accepted-step endpoints
  std::vector<Dense<3>> dense;                       // per accepted step (optional)
  std::optional<EventHit> terminal;
  double angle_total = 0.0;  // unwrapped (Z,Delta) polar angle accumulated over the run

  double s_begin() const { return samples.front().first; }
  double s_end() const { return samples.back().first; }
  const StateZdh& last() const { return samples.back().second; }

  // Dense-output evaluation; requires store_dense at integration time.
  StateZdh at(double s) const;
};

// Integrates the reduced flow from `start` until the first registered event
// triggers (or max_steps). Event locations are refined by a bracketed
// secant/bisection hybrid to |g| <= 1e-12 in the event function; the state
// at the hit is recomputed with an exact partial step, not interpolated.
Trajectory integrate(const StateZdh& start, const Dims& dims, const IntegratorConfig& cfg,
                     const std::vector<EventSpec>& events, int direction = +1);

// Follows the flow to the unique crossing of {H = h_target}; requires
// h_target < start.h. Throws Unreachable if the crossing cannot be realized
// within the slowest admissible descent time.
std::pair<StateZdh, double> integrate_to_h(const StateZdh& start, const Dims& dims,
                                           double h_target, const IntegratorConfig& cfg);

}  // namespace coho1
