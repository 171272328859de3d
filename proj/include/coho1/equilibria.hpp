#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "coho1/rhs.hpp"
#include "coho1/state.hpp"

namespace coho1 {

enum class FpLabel { p1p, p1m, p2p, p2m, conep, conem, q1p, q1m, q2p, q2m };

const char* fp_name(FpLabel l);
FpLabel fp_from_name(const std::string& name);  // "p1+", "cone-", ...

enum class FpClass { Source, Sink, Saddle };

struct FixedPoint {
  FpLabel label{};
  StateZdh coords{};
  std::array<std::complex<double>, 3> eigenvalues{};
  std::array<std::array<std::complex<double>, 3>, 3> eigenvectors{};
  FpClass classification{};
};

// Coordinates of the ten fixed points; valid for any d1, d2 >= 1.
StateZdh fp_coords(FpLabel l, const Dims& d);

// The full catalogue with linearizations; rejects d1 = 1 or d2 = 1 (the
// degenerate survey works from fp_coords/unstable frames directly).
std::vector<FixedPoint> catalogue(const Dims& d);

FixedPoint fixed_point(FpLabel l, const Dims& d);

// Spanning pair of the unstable tangent plane at p1+/p2+ (for p1-/p2- the
// same pair transported by the time reversal sigma spans the stable plane).
// u_a lies inside the cap {H = +-1}; u_b leaves it.
struct Frame {
  std::array<double, 3> u_a{};
  std::array<double, 3> u_b{};
};

Frame unstable_frame(FpLabel l, const Dims& d);
Frame stable_frame(FpLabel l, const Dims& d);  // p1-, p2- via sigma transport

}  // namespace coho1
