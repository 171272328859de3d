#include "coho1/state.hpp"

#include <cmath>
#include <string>

namespace coho1 {

Membership membership(const StateZdh& s, const Dims& d, double tol) {
  Membership m;
  const double fa = face_a(s, d);
  const double fb = face_b(s, d);
  const double caps = s.h * s.h - 1.0;
  if (fa > tol || fb > tol || caps > tol) {
    m.outside = true;
    return m;
  }
  m.face_a = std::abs(fa) <= tol;
  m.face_b = std::abs(fb) <= tol;
  if (std::abs(caps) <= tol) {
    (s.h > 0 ? m.top_cap : m.bottom_cap) = true;
  }
  m.interior = !m.boundary();
  return m;
}

StateYdh recover_y(const StateZdh& s, const Dims& d, double tol) {
  d.require_regular("recover_y");
  const double n = d.n();
  // Radicands are the face functions up to positive factors:
  //   n (d1-1) Y1^2 = -face_b,  n (d2-1) Y2^2 = -face_a.
  double r1 = -face_b(s, d);
  double r2 = -face_a(s, d);
  if (r1 < -tol || r2 < -tol)
    fail(errc::outside_locus, "recover_y: radicand below -tol (faceB=" + std::to_string(-r1) +
                                  ", faceA=" + std::to_string(-r2) + ")");
  if (r1 < 0) r1 = 0;
  if (r2 < 0) r2 = 0;
  StateYdh out;
  out.y1 = std::sqrt(r1 / (n * (d.d1 - 1)));
  out.y2 = std::sqrt(r2 / (n * (d.d2 - 1)));
  out.delta = s.delta;
  out.h = s.h;
  return out;
}

StateXyh split_delta(const StateYdh& s, const Dims& d) {
  const double n = d.n();
  StateXyh out;
  out.x1 = (d.d2 * s.delta + s.h) / n;
  // x2 = (-d1 delta + h)/n, written so that x1 - x2 returns delta up to one
  // rounding and S2 stays within a few ulps.
  out.x2 = out.x1 - s.delta;
  out.y1 = s.y1;
  out.y2 = s.y2;
  out.h = s.h;
  return out;
}

double volume_f(const StateZdh& s, const Dims& d, double tol) {
  // base1 = n (d1-1) Y1^2, base2 = n (d2-1) Y2^2 in recovered coordinates.
  double base1 = -face_b(s, d);
  double base2 = -face_a(s, d);
  if (base1 < -tol || base2 < -tol) fail(errc::outside_locus, "volume_f: point outside S");
  if (base1 < 0) base1 = 0;
  if (base2 < 0) base2 = 0;
  return std::pow(base1, d.d1) * std::pow(base2, d.d2);
}

}  // namespace coho1
