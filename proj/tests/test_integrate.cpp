#include <cmath>
#include <cstring>

#include "coho1/equilibria.hpp"
#include "coho1/integrate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coho1;

namespace {
const IntegratorConfig kCfg{};
}

TEST_CASE("integrate.cone closed form") {
  const Dims d{4, 5};
  // On the axis H' = -(1-H^2)/n, so H(s) = -tanh((s - c)/n) with
  // c = n artanh(h0).
  const StateZdh start{0, 0, 0.5};
  auto [state, s_hit] = integrate_to_h(start, d, 0.0, kCfg);
  CHECK(s_hit == doctest::Approx(9.0 * std::atanh(0.5)).epsilon(1e-10));
  CHECK(std::abs(state.z) < 1e-13);
  CHECK(std::abs(state.delta) < 1e-13);
  CHECK(std::abs(state.h) < 1e-12);

  // Dense samples against the closed form along the run.
  Trajectory t = integrate(start, d, kCfg, {EventSpec::h_crossing(-0.8)});
  const double c = 9.0 * std::atanh(0.5);
  for (const auto& [s, x] : t.samples) {
    REQUIRE(std::abs(x.h - (-std::tanh((s - c) / 9.0))) <= 1e-8);
  }
}

TEST_CASE("integrate.q-line keeps Delta and follows unit tanh") {
  const Dims d{4, 5};
  const double b = std::sqrt(8.0 / 20.0);
  const StateZdh start{0, -b, 0.9};
  Trajectory t = integrate(start, d, kCfg, {EventSpec::s_limit(2.0)});
  const double c = std::atanh(0.9);
  for (const auto& [s, x] : t.samples) {
    REQUIRE(std::abs(x.delta + b) <= 1e-8);
    REQUIRE(std::abs(x.z) <= 1e-10);
    REQUIRE(std::abs(x.h - (-std::tanh(s - c))) <= 1e-8);
  }
  CHECK(t.terminal.has_value());
  CHECK(t.terminal->s == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrate.fixed point stays put") {
  const Dims d{4, 5};
  const StateZdh p = fp_coords(FpLabel::p1p, d);
  Trajectory t = integrate(p, d, kCfg, {EventSpec::s_limit(10.0)});
  for (const auto& [s, x] : t.samples) {
    REQUIRE(std::hypot(x.z - p.z, x.delta - p.delta) <= 1e-12);
    REQUIRE(std::abs(x.h - p.h) <= 1e-12);
  }
}

TEST_CASE("integrate.to_h contract") {
  const Dims d{3, 6};
  oracle::Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    const StateZdh s = oracle::sample_interior(rng, d, 5e-2);
    const double target = rng.uniform(-0.9, s.h - 0.05);
    auto [state, s_hit] = integrate_to_h(s, d, target, kCfg);
    REQUIRE(std::abs(state.h - target) <= 1e-12);
    REQUIRE(s_hit > 0);
  }
}

TEST_CASE("integrate.funnel preserved while H >= 0") {
  const Dims d{4, 5};
  const double c = 0.9 * volume_f_cone(d);
  // A state near the cone axis lies deep inside I_c; its crossing of H = 0
  // must still satisfy F >= c.
  const StateZdh start{1e-3, -2e-3, 0.8};
  REQUIRE(volume_f(start, d) >= c);
  auto [state, s_hit] = integrate_to_h(start, d, 0.0, kCfg);
  CHECK(volume_f(state, d) >= c);
  // And F never decreased along the h >= 0 part.
  Trajectory t = integrate(start, d, kCfg, {EventSpec::h_crossing(0.0)});
  double prev = volume_f(start, d);
  for (const auto& [s, x] : t.samples) {
    const double f = volume_f(x, d, 1e-6);
    REQUIRE(f >= prev - 1e-12);
    prev = f;
  }
}

TEST_CASE("integrate.face drift stays small") {
  const Dims d{4, 5};
  const double n = 9, delta0 = 0.25;
  const StateZdh start{((n - 1) / n - (d.d1 * d.d2 / n) * delta0 * delta0) / d.d1, delta0, 0.95};
  Trajectory t = integrate(start, d, kCfg, {EventSpec::s_limit(10.0)});
  CHECK(std::abs(face_a(t.last(), d)) <= 1e-7);
}

TEST_CASE("integrate.fixed-step order of the embedded pair") {
  // Global error on the cone law under step halving: slope >= 4 means the
  // advertised order is realized.
  const Dims d{4, 5};
  auto field = [&](double, const VecN<3>& y) {
    const Deriv3 f = rhs_zdh(StateZdh::from_array(y), d);
    return VecN<3>{f.z, f.delta, f.h};
  };
  auto run_fixed = [&](double hstep) {
    VecN<3> y{0, 0, 0.5};
    double s = 0;
    const double s_end = 4.0;
    while (s < s_end - 1e-12) {
      const double hh = std::min(hstep, s_end - s);
      const VecN<3> k1 = field(s, y);
      y = dp5_step<3>(field, s, y, k1, hh).y1;
      s += hh;
    }
    const double c = 9.0 * std::atanh(0.5);
    return std::abs(y[2] - (-std::tanh((4.0 - c) / 9.0)));
  };
  const double e1 = run_fixed(0.2), e2 = run_fixed(0.1), e3 = run_fixed(0.05);
  const double slope1 = std::log2(e1 / e2), slope2 = std::log2(e2 / e3);
  CHECK(slope1 >= 4.0);
  CHECK(slope2 >= 4.0);

  // Tightening tolerances over three decades shrinks the global error at a
  // fixed arclength (event refinement is excluded here on purpose: its own
  // accuracy floor sits near 1e-13 and would mask the tolerance).
  double prev_err = 1e9;
  const double c0 = 9.0 * std::atanh(0.9);
  for (double tol : {1e-4, 1e-7, 1e-10}) {
    IntegratorConfig c = kCfg;
    c.rel_tol = tol;
    c.abs_tol = tol * 1e-2;
    c.max_step = 2.0;
    Trajectory t = integrate({0, 0, 0.9}, d, c, {EventSpec::s_limit(12.0)});
    const double err = std::abs(t.last().h - (-std::tanh((12.0 - c0) / 9.0)));
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 2e-10);
}

TEST_CASE("integrate.events") {
  const Dims d{4, 5};
  SUBCASE("near-point event terminates at the prescribed distance") {
    const StateZdh cone_m = fp_coords(FpLabel::conem, d);
    const StateZdh start{0, 0, 0.5};
    Trajectory t = integrate(start, d, kCfg,
                             {EventSpec::near_point(cone_m, 1e-3), EventSpec::s_limit(200.0)});
    REQUIRE(t.terminal.has_value());
    CHECK(t.terminal->kind == EventKind::NearPoint);
    const StateZdh x = t.terminal->state;
    const double dist = std::sqrt((x.z - cone_m.z) * (x.z - cone_m.z) +
                                  (x.delta - cone_m.delta) * (x.delta - cone_m.delta) +
                                  (x.h - cone_m.h) * (x.h - cone_m.h));
    CHECK(std::abs(dist - 1e-3) <= 1e-12);
  }
  SUBCASE("arc cap fires after the requested rotation") {
    // Spin around the cone at the equator: a small offset rotates with rate
    // ~ 4/9 at h ~ 0, so 2 pi of arc is reachable before h drops far.
    const StateZdh start{5e-3, 0.0, 0.35};
    Trajectory t =
        integrate(start, d, kCfg, {EventSpec::arc_cap(M_PI), EventSpec::s_limit(500.0)});
    REQUIRE(t.terminal.has_value());
    CHECK(t.terminal->kind == EventKind::ArcCap);
    CHECK(std::abs(std::abs(t.angle_total) - M_PI) <= 1e-10);
  }
  SUBCASE("unreachable target is detected") {
    // Starting on the q-line: H decreases at unit rate toward -1 but the
    // admissible bound is computed from the cone clock, so H = -0.99999
    // is still reached; a target below -1 is rejected by membership of the
    // problem itself. Use a start at a fixed point instead: H never moves.
    const StateZdh p = fp_coords(FpLabel::p1p, d);
    StateZdh nudged = p;  // exactly at the fixed point: h frozen at 1
    CHECK_THROWS_AS((void)integrate_to_h(nudged, d, 0.0, kCfg), error);
  }
}

TEST_CASE("integrate.determinism is bit-exact") {
  const Dims d{2, 7};
  const StateZdh start{0.01, -0.02, 0.85};
  Trajectory a = integrate(start, d, kCfg, {EventSpec::h_crossing(-0.3)});
  Trajectory b = integrate(start, d, kCfg, {EventSpec::h_crossing(-0.3)});
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    REQUIRE(a.samples[i].first == b.samples[i].first);
    REQUIRE(std::memcmp(&a.samples[i].second, &b.samples[i].second, sizeof(StateZdh)) == 0);
  }
}
