#include "coho1/rhs.hpp"

#include <algorithm>
#include <cmath>

namespace coho1 {

Deriv3 rhs_zdh(const StateZdh& s, const Dims& d) {
  const double n = d.n();
  const double dd = double(d.d1) * d.d2;
  const double z = s.z, de = s.delta, h = s.h;
  Deriv3 out;
  out.z = (2.0 / n) * de * (dd * z * de * h + (dd / n) * de * de - (n - 1) / n + (d.d1 - d.d2) * z);
  out.delta = de * h * ((dd / n) * de * de - (n - 1) / n) + z;
  out.h = -((1.0 - h * h) / n) * (dd * de * de + 1.0);
  return out;
}

Deriv4 rhs_ydh(const StateYdh& s, const Dims& d) {
  const double n = d.n();
  const double dd = double(d.d1) * d.d2;
  const double de = s.delta, h = s.h;
  Deriv4 out;
  out.y1 = (dd / n) * s.y1 * de * (de * h - 1.0 / d.d1);
  out.y2 = (dd / n) * s.y2 * de * (de * h + 1.0 / d.d2);
  out.delta = (de * h / n) * (dd * de * de - (n - 1)) + (d.d1 - 1) * s.y1 * s.y1 -
              (d.d2 - 1) * s.y2 * s.y2;
  out.h = -((1.0 - h * h) / n) * (dd * de * de + 1.0);
  return out;
}

Deriv5 rhs_xyh(const StateXyh& s, const Dims& d) {
  const double n = d.n();
  const double q = d.d1 * s.x1 * s.x1 + d.d2 * s.x2 * s.x2;  // sum d_i X_i^2
  const double w = (1.0 - s.h * s.h) / n;
  const double a = q + w;
  Deriv5 out;
  out.x1 = s.x1 * s.h * (a - 1.0) + (d.d1 - 1) * s.y1 * s.y1 - w;
  out.x2 = s.x2 * s.h * (a - 1.0) + (d.d2 - 1) * s.y2 * s.y2 - w;
  out.y1 = s.y1 * (s.h * a - s.x1);
  out.y2 = s.y2 * (s.h * a - s.x2);
  out.h = (s.h * s.h - 1.0) * a;
  return out;
}

Jac3 jacobian_zdh(const StateZdh& s, const Dims& d) {
  const double n = d.n();
  const double dd = double(d.d1) * d.d2;
  const double z = s.z, de = s.delta, h = s.h;
  Jac3 j;
  j[0][0] = (2.0 / n) * de * (dd * de * h + (d.d1 - d.d2));
  j[0][1] = (2.0 / n) *
            (2.0 * dd * z * de * h + 3.0 * (dd / n) * de * de - (n - 1) / n + (d.d1 - d.d2) * z);
  j[0][2] = (2.0 / n) * dd * z * de * de;
  j[1][0] = 1.0;
  j[1][1] = h * (3.0 * (dd / n) * de * de - (n - 1) / n);
  j[1][2] = de * ((dd / n) * de * de - (n - 1) / n);
  j[2][0] = 0.0;
  j[2][1] = -(2.0 / n) * dd * (1.0 - h * h) * de;
  j[2][2] = (2.0 / n) * h * (dd * de * de + 1.0);
  return j;
}

ConeEigen cone_eigen(double h, int n, double /*tol*/) {
  ConeEigen e;
  const double nn = double(n);
  e.lambda0 = {2.0 * h / nn, 0.0};
  e.vec0 = {std::complex<double>(0), std::complex<double>(0), std::complex<double>(1)};
  const double disc = (nn - 1) * h * h - 8.0;
  const double pre = std::sqrt(nn - 1) / (2.0 * nn);
  if (disc == 0.0) {
    e.degenerate = true;
    const double lam = pre * (-std::sqrt(nn - 1) * h);
    e.lambda1 = e.lambda2 = {lam, 0.0};
    // Defective: algebraic multiplicity two, geometric multiplicity one.
    const double sgn = h > 0 ? 1.0 : -1.0;
    e.vec1 = e.vec2 = {std::complex<double>(std::sqrt(2.0 * (nn - 1))),
                       std::complex<double>(sgn * nn), std::complex<double>(0)};
    return e;
  }
  std::complex<double> root =
      disc > 0 ? std::complex<double>(std::sqrt(disc), 0.0)
               : std::complex<double>(0.0, std::sqrt(-disc));
  e.lambda1 = pre * (-std::sqrt(nn - 1) * h + root);
  e.lambda2 = pre * (-std::sqrt(nn - 1) * h - root);
  const std::complex<double> top(-2.0 * (nn - 1) / (nn * nn), 0.0);
  e.vec1 = {top, e.lambda1, std::complex<double>(0)};
  e.vec2 = {top, e.lambda2, std::complex<double>(0)};
  return e;
}

namespace {

// One Newton polish pass on p(x) = x^3 + a x^2 + b x + c over the complexes.
std::complex<double> polish_root(std::complex<double> x, double a, double b, double c) {
  for (int it = 0; it < 50; ++it) {
    const std::complex<double> p = ((x + a) * x + b) * x + c;
    const std::complex<double> dp = (3.0 * x + 2.0 * a) * x + b;
    if (std::abs(dp) == 0.0) break;
    const std::complex<double> step = p / dp;
    x -= step;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c) {
  // Depressed cubic t^3 + p t + q with x = t - a/3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  std::array<std::complex<double>, 3> r;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc >= 0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    r[0] = {u + v + shift, 0.0};
    const double re = -(u + v) / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    r[1] = {re, im};
    r[2] = {re, -im};
  } else {
    // Three real roots, trigonometric form.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    for (int k = 0; k < 3; ++k)
      r[k] = {m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift, 0.0};
  }
  for (auto& x : r) {
    x = polish_root(x, a, b, c);
    if (std::abs(x.imag()) <= 1e-13 * std::max(1.0, std::abs(x.real()))) x = {x.real(), 0.0};
  }
  // Keep genuine complex roots as exact conjugate pairs.
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      if (r[i].imag() != 0.0 && std::abs(r[i] - std::conj(r[k])) <
                                    1e-10 * std::max(1.0, std::abs(r[i])))
        r[k] = std::conj(r[i]);
  return r;
}

std::array<std::complex<double>, 3> eigenvalues_3x3(const Jac3& j) {
  const double tr = j[0][0] + j[1][1] + j[2][2];
  const double m00 = j[1][1] * j[2][2] - j[1][2] * j[2][1];
  const double m11 = j[0][0] * j[2][2] - j[0][2] * j[2][0];
  const double m22 = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  const double det = j[0][0] * m00 - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                     j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
  // char poly: lambda^3 - tr lambda^2 + (sum principal minors) lambda - det
  return cubic_roots(-tr, m00 + m11 + m22, -det);
}

}  // namespace coho1
