#pragma once
// Brute-force reference implementations used only by the tests. They avoid
// the library's own helpers so a shared bug cannot cancel out.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "catotoc/types.hpp"

namespace oracle {

using catotoc::cplx;
using catotoc::Matrix;
using catotoc::Vector;

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// keep = 1 traces out the second factor
inline Matrix partial_trace(const Matrix& rho, int n1, int n2, int keep) {
  if (keep == 1) {
    Matrix out = Matrix::Zero(n1, n1);
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n1; ++b)
        for (int k = 0; k < n2; ++k) out(a, b) += rho(a * n2 + k, b * n2 + k);
    return out;
  }
  Matrix out = Matrix::Zero(n2, n2);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b)
      for (int k = 0; k < n1; ++k) out(a, b) += rho(k * n2 + a, k * n2 + b);
  return out;
}

/// Direct evaluation of one entry of the kicked cat-map propagator.
inline cplx propagator_entry(int m11, int m12, int m22, double k, int n, int j, int l) {
  const cplx amp = std::sqrt(cplx(1.0, 0.0) / (cplx(0.0, 1.0) * static_cast<double>(n * m12)));
  const double quad = pi * (m11 * double(j) * j - 2.0 * j * l + m22 * double(l) * l) / (n * double(m12));
  const double kickp = k * n * std::cos(2.0 * pi * j / n) / (2.0 * pi);
  return amp * std::exp(cplx(0.0, quad + kickp));
}

inline cplx coupling_entry(int n, double kc, int j1, int j2) {
  return std::exp(cplx(0.0, n * kc * std::cos(2.0 * pi * (j1 + j2) / n) / (2.0 * pi)));
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double von_neumann(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log(l);
  }
  return s;
}

}  // namespace oracle
