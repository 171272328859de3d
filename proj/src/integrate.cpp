#include "coho1/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coho1 {

namespace {

inline double turn_angle(const StateZdh& a, const StateZdh& b) {
  const double cross = a.z * b.delta - a.delta * b.z;
  const double dot = a.z * b.z + a.delta * b.delta;
  if (cross == 0.0 && dot == 0.0) return 0.0;
  return std::atan2(cross, dot);
}

inline double locus_excess(const StateZdh& s, const Dims& d) {
  return std::max({face_a(s, d), face_b(s, d), s.h * s.h - 1.0});
}

struct EventEval {
  // g crosses zero exactly when the event triggers; sign at the start of the
  // run is recorded so only genuine crossings count.
  static double value(const EventSpec& ev, double s, const StateZdh& x, double angle_acc,
                      const Dims& dims) {
    switch (ev.kind) {
      case EventKind::HCrossing: return x.h - ev.value;
      case EventKind::NearPoint: {
        const double dz = x.z - ev.center.z, dd = x.delta - ev.center.delta,
                     dh = x.h - ev.center.h;
        return std::sqrt(dz * dz + dd * dd + dh * dh) - ev.value;
      }
      case EventKind::ExitLocus: return locus_excess(x, dims) - ev.value;
      case EventKind::SLimit: return s - ev.value;
      case EventKind::ArcCap: return std::abs(angle_acc) - ev.value;
    }
    return 0.0;
  }
};

}  // namespace

StateZdh Trajectory::at(double s) const {
  if (dense.empty()) fail(errc::invalid_config, "Trajectory::at requires store_dense");
  auto it = std::lower_bound(dense.begin(), dense.end(), s,
                             [](const Dense<3>& d, double v) { return d.s0 + d.h < v; });
  if (it == dense.end()) --it;
  const auto y = it->eval(std::clamp(s, it->s0, it->s0 + it->h));
  return StateZdh::from_array(y);
}

Trajectory integrate(const StateZdh& start, const Dims& dims, const IntegratorConfig& cfg,
                     const std::vector<EventSpec>& events, int direction) {
  Trajectory traj;
  traj.dims = dims;
  traj.direction = direction;
  traj.samples.emplace_back(0.0, start);

  const double dir = direction >= 0 ? 1.0 : -1.0;
  auto field = [&dims, dir](double, const VecN<3>& y) {
    const Deriv3 d = rhs_zdh(StateZdh::from_array(y), dims);
    return VecN<3>{dir * d.z, dir * d.delta, dir * d.h};
  };

  std::vector<double> g_prev(events.size());
  double angle_acc = 0.0;
  for (size_t i = 0; i < events.size(); ++i)
    g_prev[i] = EventEval::value(events[i], 0.0, start, 0.0, dims);
  bool has_exit_event = false;
  for (const auto& ev : events)
    if (ev.kind == EventKind::ExitLocus) has_exit_event = true;
  const bool check_locus = cfg.check_locus && !has_exit_event;
  dp5_drive<3>(
      field, 0.0, start.as_array(), cfg.rk(),
      [&](double s0, const VecN<3>& y0v, double s1, const VecN<3>& y1v, const Dense<3>& dense,
          const VecN<3>&) -> bool {
        const StateZdh y0 = StateZdh::from_array(y0v);
        const StateZdh y1 = StateZdh::from_array(y1v);
        const double step_turn = turn_angle(y0, y1);

        // Partial re-step used both for event refinement and the final state:
        // one exact Dormand-Prince step of the needed length, never the
        // interpolant, so event states carry integration-grade accuracy.
        auto state_at = [&](double s) -> StateZdh {
          if (s <= s0) return y0;
          if (s >= s1) return y1;
          const VecN<3> k1 = field(s0, y0v);
          return StateZdh::from_array(dp5_step<3>(field, s0, y0v, k1, s - s0).y1);
        };

        double best_s = 0.0;
        int best_idx = -1;
        StateZdh best_state{};
        for (size_t i = 0; i < events.size(); ++i) {
          const double ang1 = angle_acc + step_turn;
          const double g1 = EventEval::value(events[i], s1, y1, ang1, dims);
          const double g0 = g_prev[i];
          if (!((g0 < 0 && g1 >= 0) || (g0 > 0 && g1 <= 0))) {
            g_prev[i] = g1;
            continue;
          }
          // Bracketed secant/bisection hybrid, 60-iteration cap.
          double a = s0, b = s1, ga = g0, gb = g1;
          double m = b, gm = gb;
          StateZdh xm = y1;
          for (int it = 0; it < 60; ++it) {
            double cand;
            const double denom = gb - ga;
            if (denom != 0.0) {
              cand = b - gb * (b - a) / denom;
              const double lo = a + 0.05 * (b - a), hi = b - 0.05 * (b - a);
              if (!(cand >= lo && cand <= hi)) cand = 0.5 * (a + b);
            } else {
              cand = 0.5 * (a + b);
            }
            xm = state_at(cand);
            const double ang = angle_acc + turn_angle(y0, xm);
            gm = EventEval::value(events[i], cand, xm, ang, dims);
            m = cand;
            if (std::abs(gm) <= 1e-12 || (b - a) <= 1e-14 * std::max(1.0, std::abs(b))) break;
            if ((ga < 0) != (gm < 0)) {
              b = m;
              gb = gm;
            } else {
              a = m;
              ga = gm;
            }
          }
          if (best_idx < 0 || m < best_s) {
            best_idx = int(i);
            best_s = m;
            best_state = xm;
          }
          g_prev[i] = g1;
        }

        if (best_idx >= 0) {
          traj.angle_total = angle_acc + turn_angle(y0, best_state);
          traj.samples.emplace_back(best_s, best_state);
          if (cfg.store_dense) traj.dense.push_back(dense);
          traj.terminal = EventHit{events[best_idx].kind, best_idx, best_s, best_state};
          return false;
        }

        angle_acc += step_turn;
        traj.angle_total = angle_acc;
        traj.samples.emplace_back(s1, y1);
        if (cfg.store_dense) traj.dense.push_back(dense);
        if (check_locus && locus_excess(y1, dims) > cfg.locus_margin)
          fail(errc::left_locus, "trajectory left S by more than locus_margin at s=" +
                                     std::to_string(s1));
        // H must stay monotone along the flow direction.
        const double dh = dir * (y1.h - y0.h);
        if (dh > 1e-12)
          fail(errc::left_locus,
               "monotonicity of H violated at s=" + std::to_string(s1));
        return true;
      });

  return traj;
}

std::pair<StateZdh, double> integrate_to_h(const StateZdh& start, const Dims& dims,
                                           double h_target, const IntegratorConfig& cfg) {
  if (!(h_target < start.h))
    fail(errc::invalid_config, "integrate_to_h requires h_target < start.h");
  // The descent can be no slower than the cone clock h' = -(1-h^2)/n, so the
  // crossing must occur within the cone travel time plus slack.
  auto atanh_c = [](double x) { return std::atanh(std::clamp(x, -1.0 + 1e-15, 1.0 - 1e-15)); };
  const double s_bound = dims.n() * (atanh_c(start.h) - atanh_c(h_target)) + 10.0;
  std::vector<EventSpec> events{EventSpec::h_crossing(h_target), EventSpec::s_limit(s_bound)};
  IntegratorConfig c = cfg;
  c.store_dense = false;
  Trajectory t = integrate(start, dims, c, events);
  if (!t.terminal || t.terminal->kind != EventKind::HCrossing)
    fail(errc::unreachable, "H=" + std::to_string(h_target) +
                                " not reached within the admissible descent time");
  return {t.terminal->state, t.terminal->s};
}

}  // namespace coho1
