#include <cmath>

#include "coho1/winding.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coho1;

namespace {

PlanarCurve circle(double turns, int nv) {
  PlanarCurve c;
  for (int i = 0; i <= nv; ++i) {
    const double t = turns * 2.0 * M_PI * i / nv;
    c.vertices.push_back({std::cos(t), std::sin(t)});
  }
  return c;
}

// Monotone-radius spiral from a common anchor; angle law given by a random
// monotone reparametrization. Ends exactly at the origin.
PlanarCurve random_spiral(oracle::Rng& rng, double theta_total, double r0, double phi0) {
  const int nv = std::max(200, int(std::abs(theta_total) / 0.05));
  std::vector<double> w(nv);
  double acc = 0;
  for (int i = 0; i < nv; ++i) {
    w[i] = 0.1 + rng.uniform();
    acc += w[i];
  }
  PlanarCurve c;
  c.ends_at_origin = true;
  const double decay = rng.uniform(2.0, 6.0);
  double cum = 0;
  c.vertices.push_back({r0 * std::cos(phi0), r0 * std::sin(phi0)});
  for (int i = 0; i < nv; ++i) {
    cum += w[i];
    const double u = cum / acc;
    const double r = r0 * std::exp(-decay * u * 3.0);
    const double a = phi0 + theta_total * u;
    c.vertices.push_back({r * std::cos(a), r * std::sin(a)});
  }
  c.vertices.push_back({0.0, 0.0});
  return c;
}

}  // namespace

TEST_CASE("winding.angle basics") {
  SUBCASE("two loops of the unit circle") {
    CHECK(winding_angle(circle(2.0, 4000)) == doctest::Approx(4 * M_PI).epsilon(1e-9));
  }
  SUBCASE("radial segment has no winding") {
    PlanarCurve c;
    c.vertices = {{2, 0}, {1.5, 0}, {1, 0}};
    CHECK(winding_angle(c) == 0.0);
  }
  SUBCASE("logarithmic spiral r = e^{-t}, 10 pi of angle") {
    PlanarCurve c;
    const int nv = 10000;
    for (int i = 0; i <= nv; ++i) {
      const double t = 10.0 * M_PI * i / nv;
      c.vertices.push_back({std::exp(-t) * std::cos(t), std::exp(-t) * std::sin(t)});
    }
    CHECK(winding_angle(c) == doctest::Approx(10 * M_PI).epsilon(1e-6));
  }
  SUBCASE("origin vertex rejected") {
    PlanarCurve c;
    c.vertices = {{1, 0}, {0, 0}, {0, 1}};
    CHECK_THROWS_AS((void)winding_angle(c), error);
  }
  SUBCASE("antipodal step is ambiguous for raw polylines") {
    PlanarCurve c;
    c.vertices = {{1, 0}, {-1, 0}};
    CHECK_THROWS_AS((void)winding_angle(c), error);
    c.dense_producer = true;  // dense producers get arc subdivision
    CHECK(std::abs(std::abs(winding_angle(c)) - M_PI) < 1e-9);
  }
}

TEST_CASE("winding.refinement invariance") {
  oracle::Rng rng(71);
  PlanarCurve c = random_spiral(rng, 7.0, 1.0, 0.3);
  c.ends_at_origin = false;
  c.vertices.pop_back();  // drop the origin, keep a generic polyline
  const double theta = winding_angle(c);
  PlanarCurve fine;
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    const auto& a = c.vertices[i];
    const auto& b = c.vertices[i + 1];
    fine.vertices.push_back(a);
    fine.vertices.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }
  fine.vertices.push_back(c.vertices.back());
  CHECK(winding_angle(fine) == doctest::Approx(theta).epsilon(1e-12));
}

TEST_CASE("winding.homotopy continuity") {
  // Perturbing vertices by <= eps while staying outside radius R moves theta
  // by <= C eps / R for a modest C.
  oracle::Rng rng(73);
  PlanarCurve c = circle(1.5, 600);
  const double theta0 = winding_angle(c);
  const double eps = 1e-4, rmin = 1.0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    PlanarCurve p = c;
    for (auto& v : p.vertices) {
      v[0] += rng.uniform(-eps, eps);
      v[1] += rng.uniform(-eps, eps);
    }
    worst = std::max(worst, std::abs(winding_angle(p) - theta0));
  }
  CHECK(worst <= 10.0 * eps / rmin);
}

TEST_CASE("winding.limit reports") {
  SUBCASE("log spiral truncated far down keeps its angle") {
    PlanarCurve c;
    c.ends_at_origin = true;
    const int nv = 20000;
    for (int i = 0; i <= nv; ++i) {
      const double t = 10.0 * M_PI * i / nv;
      c.vertices.push_back({std::exp(-t) * std::cos(t), std::exp(-t) * std::sin(t)});
    }
    c.vertices.push_back({0, 0});
    const WindingLimitReport rep = winding_limit(c, {std::exp(-10.0 * M_PI) * 1.0000001});
    CHECK(rep.theta[0] >= 10 * M_PI - 1e-3);
  }
  SUBCASE("radial inward segment certifies zero") {
    PlanarCurve c;
    c.ends_at_origin = true;
    for (int i = 0; i <= 100; ++i) c.vertices.push_back({1.0 - i / 101.0, 0.0});
    c.vertices.push_back({0, 0});
    const WindingLimitReport rep = winding_limit(c);
    for (double t : rep.theta) CHECK(t == 0.0);
    CHECK(rep.certified_at_least(0.0));
    CHECK_FALSE(rep.certified_at_least(0.1));
  }
}

TEST_CASE("winding.min_intersections") {
  CHECK(min_intersections(4 * M_PI + 0.1) == 2);
  CHECK(min_intersections(2 * M_PI) == 0);
  CHECK(min_intersections(5 * M_PI) == 2);
  CHECK(min_intersections(-3.0) == 0);
  CHECK(min_intersections(0.0) == 0);
}

TEST_CASE("winding.brute oracle basics") {
  SUBCASE("crossing diameters meet once") {
    PlanarCurve a, b;
    a.vertices = {{-1, 0}, {1, 0}};
    b.vertices = {{0, -1}, {0, 1}};
    const auto pts = brute_intersections(a, b);
    REQUIRE(pts.size() == 1);
    CHECK(std::abs(pts[0][0]) < 1e-15);
    CHECK(std::abs(pts[0][1]) < 1e-15);
  }
  SUBCASE("spirals whose windings differ by 5 pi cross at least twice") {
    auto arch = [](double span) {
      PlanarCurve c;
      c.ends_at_origin = true;
      const int nv = 4000;
      for (int i = 0; i <= nv; ++i) {
        const double u = double(i) / nv;
        const double r = 1.0 - u;
        const double a = span * u;
        c.vertices.push_back({r * std::cos(a), r * std::sin(a)});
      }
      c.vertices.back() = {0, 0};
      return c;
    };
    const auto pts = brute_intersections(arch(7 * M_PI), arch(2 * M_PI));
    CHECK(int(pts.size()) >= min_intersections(5 * M_PI));
    CHECK(pts.size() >= 2);
  }
  SUBCASE("disjoint curves give nothing") {
    PlanarCurve a, b;
    a.vertices = {{0, 0}, {1, 0}};
    b.vertices = {{0, 1}, {1, 1}};
    CHECK(brute_intersections(a, b).empty());
  }
  SUBCASE("shared endpoint is tangential, not a crossing") {
    PlanarCurve a, b;
    a.vertices = {{0, 0}, {1, 1}};
    b.vertices = {{0, 0}, {1, -1}};
    CHECK(brute_intersections(a, b).empty());
    CHECK(brute_intersections(a, b, true).size() == 1);
  }
}

TEST_CASE("winding.lemma lower bound over 500 random spiral pairs") {
  oracle::Rng rng(101);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double r0 = rng.uniform(0.5, 2.0);
    const double phi0 = rng.uniform(0.0, 2 * M_PI);
    const double t1 = rng.uniform(0.0, 8 * M_PI);
    const double t2 = rng.uniform(0.0, 8 * M_PI);
    const PlanarCurve a = random_spiral(rng, t1, r0, phi0);
    const PlanarCurve b = random_spiral(rng, t2, r0, phi0);
    const double th_a = winding_angle(a);
    const double th_b = winding_angle(b);
    const int guaranteed = min_intersections(th_a - th_b);
    if (guaranteed == 0) continue;
    ++checked;
    const auto pts = brute_intersections(a, b);
    REQUIRE(int(pts.size()) >= guaranteed);
  }
  CHECK(checked > 100);  // the sampling must actually exercise the bound
}
