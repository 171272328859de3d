#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "coho1/errors.hpp"

namespace coho1 {

// Embedded Dormand-Prince 5(4) pair with the classic 4th-order continuous
// extension and PI step-size control. Kept dimension-generic so the scalar
// angle ODE and the 3D flow share one stepper.

struct RkOpts {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double min_step = 1e-14;
  long max_steps = 10'000'000;
};

template <int N>
using VecN = std::array<double, N>;

namespace dp5 {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// y_err = y5 - y4
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace dp5

// Continuous extension over one accepted step [s0, s0+h].
template <int N>
struct Dense {
  double s0 = 0, h = 0;
  VecN<N> c1{}, c2{}, c3{}, c4{}, c5{};

  VecN<N> eval(double s) const {
    const double th = (s - s0) / h;
    const double th1 = 1.0 - th;
    VecN<N> out;
    for (int i = 0; i < N; ++i)
      out[i] = c1[i] + th * (c2[i] + th1 * (c3[i] + th * (c4[i] + th1 * c5[i])));
    return out;
  }
};

template <int N>
struct StepOut {
  VecN<N> y1{};      // 5th-order solution
  VecN<N> k7{};      // slope at (s+h, y1); FSAL
  VecN<N> err{};     // y5 - y4
  Dense<N> dense{};
};

// One raw Dormand-Prince step of size h from (s, y) with k1 = f(s, y).
template <int N, class F>
StepOut<N> dp5_step(F&& f, double s, const VecN<N>& y, const VecN<N>& k1, double h) {
  using namespace dp5;
  VecN<N> t;
  for (int i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
  const VecN<N> k2 = f(s + c2 * h, t);
  for (int i = 0; i < N; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const VecN<N> k3 = f(s + c3 * h, t);
  for (int i = 0; i < N; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  const VecN<N> k4 = f(s + c4 * h, t);
  for (int i = 0; i < N; ++i)
    t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  const VecN<N> k5 = f(s + c5 * h, t);
  for (int i = 0; i < N; ++i)
    t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  const VecN<N> k6 = f(s + h, t);
  StepOut<N> out;
  for (int i = 0; i < N; ++i)
    out.y1[i] =
        y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
  out.k7 = f(s + h, out.y1);
  for (int i = 0; i < N; ++i)
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                      e7 * out.k7[i]);
  out.dense.s0 = s;
  out.dense.h = h;
  for (int i = 0; i < N; ++i) {
    const double ydiff = out.y1[i] - y[i];
    const double bspl = h * k1[i] - ydiff;
    out.dense.c1[i] = y[i];
    out.dense.c2[i] = ydiff;
    out.dense.c3[i] = bspl;
    out.dense.c4[i] = ydiff - h * out.k7[i] - bspl;
    out.dense.c5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                           d7 * out.k7[i]);
  }
  return out;
}

// Adaptive driver. After every accepted step the callback sees the dense
// interpolant and the step endpoints; returning false stops the run.
template <int N, class F, class OnStep>
void dp5_drive(F&& f, double s0, VecN<N> y0, const RkOpts& opts, OnStep&& on_step) {
  static constexpr double kSafe = 0.9, kFacMin = 0.2, kFacMax = 10.0, kBeta = 0.04;
  static constexpr double kExpo = 0.2 - kBeta * 0.75;

  VecN<N> k1 = f(s0, y0);

  // Classic starting-step heuristic.
  auto sc = [&](const VecN<N>& y) {
    VecN<N> s;
    for (int i = 0; i < N; ++i) s[i] = opts.abs_tol + opts.rel_tol * std::abs(y[i]);
    return s;
  };
  double h;
  {
    const VecN<N> w = sc(y0);
    double dnf = 0, dny = 0;
    for (int i = 0; i < N; ++i) {
      dnf += (k1[i] / w[i]) * (k1[i] / w[i]);
      dny += (y0[i] / w[i]) * (y0[i] / w[i]);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, opts.max_step);
    VecN<N> y1;
    for (int i = 0; i < N; ++i) y1[i] = y0[i] + h * k1[i];
    const VecN<N> f1 = f(s0 + h, y1);
    double der2 = 0;
    for (int i = 0; i < N; ++i) der2 += ((f1[i] - k1[i]) / w[i]) * ((f1[i] - k1[i]) / w[i]);
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, opts.max_step});
  }

  double s = s0;
  double err_old = 1e-4;
  bool rejected = false;
  for (long nstep = 0; nstep < opts.max_steps;) {
    if (h < opts.min_step)
      fail(errc::step_underflow, "required step " + std::to_string(h) + " below min_step");
    const StepOut<N> st = dp5_step<N>(f, s, y0, k1, h);
    ++nstep;
    double err = 0;
    for (int i = 0; i < N; ++i) {
      const double w = opts.abs_tol + opts.rel_tol * std::max(std::abs(y0[i]), std::abs(st.y1[i]));
      err += (st.err[i] / w) * (st.err[i] / w);
    }
    err = std::sqrt(err / N);
    if (err <= 1.0) {
      const double s_next = s + h;
      double fac = std::pow(std::max(err, 1e-32), kExpo) * std::pow(err_old, -kBeta);
      fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
      double h_next = std::min(h / fac, opts.max_step);
      if (rejected) h_next = std::min(h_next, h);
      err_old = std::max(err, 1e-4);
      rejected = false;
      if (!on_step(s, y0, s_next, st.y1, st.dense, k1)) return;
      s = s_next;
      y0 = st.y1;
      k1 = st.k7;
      h = h_next;
    } else {
      double fac = std::pow(err, kExpo) / kSafe;
      fac = std::min(fac, 1.0 / kFacMin);
      h = std::min(h / fac, opts.max_step);
      rejected = true;
    }
  }
  fail(errc::max_steps_exceeded, "dp5_drive exceeded max_steps");
}

}  // namespace coho1
