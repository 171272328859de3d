#pragma once

#include <string>

#include "coho1/errors.hpp"

namespace coho1 {

// Sphere-factor dimensions of the principal orbit S^{d1} x S^{d2}.
// All system coefficients are computed from this at call time; there is no
// cached global state, so several (d1,d2) pairs can be swept in one process.
struct Dims {
  int d1 = 0;
  int d2 = 0;

  constexpr int n() const { return d1 + d2; }

  static Dims make(int d1, int d2) {
    if (d1 < 1 || d2 < 1) fail(errc::invalid_config, "dims require d1,d2 >= 1");
    return Dims{d1, d2};
  }

  // Most coordinate conversions divide by (d1-1); they must reject d1 = 1.
  void require_regular(const char* who) const {
    if (d1 < 2 || d2 < 2)
      fail(errc::degenerate_dims, std::string(who) + " requires d1,d2 >= 2 (got d1=" +
                                      std::to_string(d1) + ", d2=" + std::to_string(d2) + ")");
  }

  bool regular() const { return d1 >= 2 && d2 >= 2; }

  std::string tag() const { return std::to_string(d1) + "-" + std::to_string(d2); }
};

}  // namespace coho1
