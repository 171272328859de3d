#pragma once

#include <string>
#include <vector>

#include "coho1/rhs.hpp"
#include "coho1/rk45.hpp"
#include "coho1/state.hpp"

namespace coho1 {

// Right-hand side of the (delta-adjusted) angle ODE along the cone solution,
// in the arclength variable s of the cone clock h(s) = -tanh(s/n).
double angle_rhs(double phi, double h, int n, double delta);

// Dense solution of the angle ODE with phi(h=0) = 3 pi/2 + delta.
// Integrated in h away from the caps and in s within |h| > 0.999, where the
// 1/(1-h^2) substitution factor turns stiff.
class BarrierSolution {
 public:
  struct Node {
    double key;   // h on the mid leg; tau = n artanh(|h|) on the cap legs
    double phi;
    double dphi;  // derivative w.r.t. the leg's own variable
  };

  int n = 9;
  double delta = 0.0;
  std::vector<Node> mid;      // keyed by h, ascending, |h| <= h_switch
  std::vector<Node> up;       // h > h_switch leg, keyed by tau ascending
  std::vector<Node> down;     // h < -h_switch leg, keyed by tau ascending
  double h_switch = 0.999;

  std::vector<double> limit_h;    // 1 - 10^-k, k = 3..8
  std::vector<double> limit_phi;  // phi there
  double phi_limit = 0.0;
  double phi_limit_uncertainty = 0.0;

  double eval(double h) const;        // phi(h)
  double eval_dphi_ds(double h) const {
    return angle_rhs(eval(h), h, n, delta);
  }
};

// require_settled_limit: throw NonConvergentLimit when the extrapolated
// limit's uncertainty exceeds 1e-4 (the certification threshold); probing
// callers switch it off and read the uncertainty themselves.
BarrierSolution solve_barrier(int n, double delta, const RkOpts& opts = {},
                              bool require_settled_limit = true);

// Numerical verification of the explicit comparison checkpoints for the
// barrier solution at n = 9 and its delta-adjusted refinement.
struct BarrierCheckpoint {
  std::string name;
  double location = 0.0;  // h (or s for the printed s0 row)
  double computed = 0.0;
  double bound = 0.0;     // upper bound, or printed reference value
  bool is_reference = false;  // compare |computed - bound| <= 0.01 instead of <=
  bool clamped = false;   // evaluation point clamped into the admissible range
  bool pass = false;
};

struct BarrierReport {
  int n = 9;
  double delta = 0.0;
  std::vector<BarrierCheckpoint> rows;
  double eps_measured = 0.0;  // worst margin below arctan(9/4) for h > 0.995
  double phi_limit = 0.0;
  double phi_limit_uncertainty = 0.0;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

BarrierReport checkpoint_report(double delta, const RkOpts& opts = {});

// Throws CheckpointFailed naming the first violated row.
void require_pass(const BarrierReport& rep);

// Inner product of the helicoidal-surface forward normal with the flow at
// radius r from the cone axis; positive values trap trajectories on one side.
double helicoid_inner(const BarrierSolution& sol, double h, double r, const Dims& dims);

// Grid-certified margins: the largest delta0 on the scan grid such that all
// checkpoints pass with positive margin for every delta < delta0, and the
// smallest step-5 margin epsilon observed among the passing deltas.
struct Margins {
  double epsilon = 0.0;
  double delta0 = 0.0;
  std::vector<double> grid;
  std::vector<bool> pass;
};

Margins find_margins(const RkOpts& opts = {});

}  // namespace coho1
