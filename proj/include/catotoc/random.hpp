#pragma once

#include <random>

#include "catotoc/types.hpp"

namespace catotoc {

/// Seeded samplers for checks and tests. std::normal_distribution is
/// deterministic for a fixed standard library, which is all we need.
using Rng = std::mt19937_64;

inline Vector gaussian_vector(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

/// Haar-distributed pure state.
inline StateVector random_state(int dim, Rng& rng) { return StateVector::normalized(gaussian_vector(dim, rng)); }

inline Matrix random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

/// Ginibre-induced mixed state of the given rank.
inline DensityMatrix random_density(int dim, int rank, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix(rho);
}

inline Matrix random_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

}  // namespace catotoc
