#include "coho1/equilibria.hpp"

#include <cmath>

namespace coho1 {

const char* fp_name(FpLabel l) {
  switch (l) {
    case FpLabel::p1p: return "p1+";
    case FpLabel::p1m: return "p1-";
    case FpLabel::p2p: return "p2+";
    case FpLabel::p2m: return "p2-";
    case FpLabel::conep: return "cone+";
    case FpLabel::conem: return "cone-";
    case FpLabel::q1p: return "q1+";
    case FpLabel::q1m: return "q1-";
    case FpLabel::q2p: return "q2+";
    case FpLabel::q2m: return "q2-";
  }
  return "?";
}

FpLabel fp_from_name(const std::string& name) {
  for (int i = 0; i < 10; ++i) {
    const auto l = FpLabel(i);
    if (name == fp_name(l)) return l;
  }
  fail(errc::invalid_config, "unknown fixed point label '" + name + "'");
}

StateZdh fp_coords(FpLabel l, const Dims& d) {
  const double n = d.n();
  const double b = std::sqrt((n - 1) / (double(d.d1) * d.d2));
  const double z1 = double(d.d1 - 1) / (double(d.d1) * d.d1);
  const double z2 = double(d.d2 - 1) / (double(d.d2) * d.d2);
  switch (l) {
    case FpLabel::p1p: return {z1, 1.0 / d.d1, 1.0};
    case FpLabel::p1m: return {z1, -1.0 / d.d1, -1.0};
    case FpLabel::p2p: return {-z2, -1.0 / d.d2, 1.0};
    case FpLabel::p2m: return {-z2, 1.0 / d.d2, -1.0};
    case FpLabel::conep: return {0.0, 0.0, 1.0};
    case FpLabel::conem: return {0.0, 0.0, -1.0};
    case FpLabel::q1p: return {0.0, -b, 1.0};
    case FpLabel::q1m: return {0.0, b, -1.0};
    case FpLabel::q2p: return {0.0, b, 1.0};
    case FpLabel::q2m: return {0.0, -b, -1.0};
  }
  return {};
}

namespace {

using cplx = std::complex<double>;

// At every fixed point H^2 = 1, so the Jacobian is block upper triangular:
// the (Z,Delta) block decouples from the H row. Eigen-structure follows in
// closed form from the 2x2 quadratic plus the H-diagonal entry.
FixedPoint analyze(FpLabel label, const Dims& d) {
  FixedPoint fp;
  fp.label = label;
  fp.coords = fp_coords(label, d);
  const Jac3 j = jacobian_zdh(fp.coords, d);
  const double tr = j[0][0] + j[1][1];
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  const double disc = tr * tr - 4.0 * det;
  cplx l1, l2;
  if (disc >= 0) {
    // Stable quadratic evaluation: larger-magnitude root first, mate via det.
    const double r = std::sqrt(disc);
    const double la = 0.5 * (tr + (tr >= 0 ? r : -r));
    const double lb = (la != 0.0) ? det / la : 0.5 * tr;
    l1 = cplx(la, 0.0);
    l2 = cplx(lb, 0.0);
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    l1 = cplx(0.5 * tr, im);
    l2 = std::conj(l1);
  }
  const double l3 = j[2][2];
  fp.eigenvalues = {l1, l2, cplx(l3, 0.0)};

  auto vec2 = [&](cplx lam) -> std::array<cplx, 3> {
    // (j00 - lam) v_z + j01 v_d = 0 ; rows are equivalent on the eigenline.
    const cplx a = j[0][0] - lam, b = j[0][1];
    const cplx c = j[1][0], dd = j[1][1] - lam;
    if (std::abs(a) + std::abs(b) >= std::abs(c) + std::abs(dd)) {
      if (std::abs(b) > std::abs(a)) return {b, -a, 0.0};
      return {-b, a, 0.0};
    }
    if (std::abs(dd) > std::abs(c)) return {dd, -c, 0.0};
    return {-dd, c, 0.0};
  };
  fp.eigenvectors[0] = vec2(l1);
  fp.eigenvectors[1] = vec2(l2);
  // Third eigenvector solves (J2 - l3 I) w = -(j02, j12); defective if l3 is
  // also an eigenvalue of the block (then keep (0,0,1) direction only when
  // the coupling vanishes, as at cone+-).
  {
    const double a = j[0][0] - l3, b = j[0][1], c = j[1][0], dd = j[1][1] - l3;
    const double det3 = a * dd - b * c;
    if (std::abs(det3) > 1e-12) {
      const double rz = -j[0][2], rd = -j[1][2];
      fp.eigenvectors[2] = {cplx((rz * dd - b * rd) / det3), cplx((a * rd - rz * c) / det3),
                            cplx(1.0)};
    } else {
      fp.eigenvectors[2] = {cplx(0.0), cplx(0.0), cplx(1.0)};
    }
  }

  int pos = 0, neg = 0;
  for (const auto& lam : fp.eigenvalues) (lam.real() > 0 ? pos : neg)++;
  fp.classification = pos == 3 ? FpClass::Source : (neg == 3 ? FpClass::Sink : FpClass::Saddle);
  return fp;
}

}  // namespace

FixedPoint fixed_point(FpLabel l, const Dims& d) {
  d.require_regular("fixed_point");
  return analyze(l, d);
}

std::vector<FixedPoint> catalogue(const Dims& d) {
  d.require_regular("catalogue");
  std::vector<FixedPoint> out;
  for (int i = 0; i < 10; ++i) out.push_back(analyze(FpLabel(i), d));
  return out;
}

Frame unstable_frame(FpLabel l, const Dims& d) {
  const double n = d.n();
  if (l == FpLabel::p1p) {
    return {{1.0 + double(d.d1 - d.d2) / (d.d1 * n), 1.0, 0.0},
            {double(d.d1 - 1) / (double(d.d1) * d.d1), 0.0, 1.0}};
  }
  if (l == FpLabel::p2p) {
    // The swap d1 <-> d2 conjugates the system via (Z, Delta) -> (-Z, -Delta),
    // carrying the p1+ frame of the swapped system onto p2+.
    return {{-(1.0 + double(d.d2 - d.d1) / (d.d2 * n)), -1.0, 0.0},
            {-double(d.d2 - 1) / (double(d.d2) * d.d2), 0.0, 1.0}};
  }
  fail(errc::wrong_point, std::string("unstable_frame defined at p1+/p2+, got ") + fp_name(l));
}

Frame stable_frame(FpLabel l, const Dims& d) {
  FpLabel plus;
  if (l == FpLabel::p1m)
    plus = FpLabel::p1p;
  else if (l == FpLabel::p2m)
    plus = FpLabel::p2p;
  else
    fail(errc::wrong_point, std::string("stable_frame defined at p1-/p2-, got ") + fp_name(l));
  const Frame f = unstable_frame(plus, d);
  auto sig = [](const std::array<double, 3>& v) {
    return std::array<double, 3>{v[0], -v[1], -v[2]};
  };
  return {sig(f.u_a), sig(f.u_b)};
}

}  // namespace coho1
