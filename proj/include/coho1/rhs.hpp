#pragma once

#include <array>
#include <complex>

#include "coho1/state.hpp"

namespace coho1 {

struct Deriv3 {
  double z = 0.0;
  double delta = 0.0;
  double h = 0.0;
  std::array<double, 3> as_array() const { return {z, delta, h}; }
};

struct Deriv4 {
  double y1 = 0.0, y2 = 0.0, delta = 0.0, h = 0.0;
};

struct Deriv5 {
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0, h = 0.0;
};

// 3x3 real matrix, row order (Z, Delta, H).
struct Jac3 {
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3>& operator[](int i) { return m[i]; }
  const std::array<double, 3>& operator[](int i) const { return m[i]; }
};

// Reduced flow on (Z, Delta, H).
Deriv3 rhs_zdh(const StateZdh& s, const Dims& d);

// Flow in (Y1, Y2, Delta, H).
Deriv4 rhs_ydh(const StateYdh& s, const Dims& d);

// Full flow in (X1, X2, Y1, Y2, H); defined off the constraint locus too.
Deriv5 rhs_xyh(const StateXyh& s, const Dims& d);

// Analytic Jacobian of rhs_zdh.
Jac3 jacobian_zdh(const StateZdh& s, const Dims& d);

// Eigen-structure of the linearization along the cone axis (Z = Delta = 0).
struct ConeEigen {
  std::complex<double> lambda0;                 // (2/n) h, eigenvector (0,0,1)
  std::complex<double> lambda1, lambda2;        // in-slice pair
  std::array<std::complex<double>, 3> vec0{}, vec1{}, vec2{};
  bool degenerate = false;                      // (n-1) h^2 = 8: defective double root
};

ConeEigen cone_eigen(double h, int n, double tol = 1e-12);

// Roots of a real cubic x^3 + a x^2 + b x + c, Newton-polished on the
// characteristic polynomial to ~1e-13. Complex roots come out as conjugate
// pairs, never truncated to their real parts.
std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c);

// Eigenvalues of a general 3x3 real matrix via its characteristic cubic.
std::array<std::complex<double>, 3> eigenvalues_3x3(const Jac3& j);

}  // namespace coho1
