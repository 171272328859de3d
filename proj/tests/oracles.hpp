#pragma once

// Test-only oracles kept independent of the implementation paths they check:
// finite differences, quadrature, deterministic PRNG sampling, and a
// rejection sampler for interior points of S.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include "coho1/rhs.hpp"
#include "coho1/state.hpp"

namespace oracle {

// splitmix64: tiny deterministic PRNG, independent of <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t s_;
};

// Uniform rejection sample from the interior of S at margin m.
inline coho1::StateZdh sample_interior(Rng& rng, const coho1::Dims& d, double margin = 1e-3) {
  const double n = d.n();
  const double zmax = (n - 1) / (n * d.d1);
  const double zmin = -(n - 1) / (n * d.d2);
  const double dmax = std::sqrt((n - 1) / (double(d.d1) * d.d2));
  for (;;) {
    coho1::StateZdh s{rng.uniform(zmin, zmax), rng.uniform(-dmax, dmax),
                      rng.uniform(-1.0 + margin, 1.0 - margin)};
    if (coho1::face_a(s, d) < -margin && coho1::face_b(s, d) < -margin) return s;
  }
}

// Central-difference Jacobian of rhs_zdh, step 1e-6.
inline coho1::Jac3 fd_jacobian(const coho1::StateZdh& s, const coho1::Dims& d,
                               double step = 1e-6) {
  coho1::Jac3 j;
  const std::array<double, 3> base = s.as_array();
  for (int col = 0; col < 3; ++col) {
    std::array<double, 3> p = base, m = base;
    p[col] += step;
    m[col] -= step;
    const auto fp = coho1::rhs_zdh(coho1::StateZdh::from_array(p), d).as_array();
    const auto fm = coho1::rhs_zdh(coho1::StateZdh::from_array(m), d).as_array();
    for (int row = 0; row < 3; ++row) j[row][col] = (fp[row] - fm[row]) / (2.0 * step);
  }
  return j;
}

// Composite Simpson quadrature on a uniform grid refinement.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace oracle
