#include "catotoc/entropy.hpp"

#include <cmath>

namespace catotoc {

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for hermitian rho
  return rho.matrix().squaredNorm();
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

double renyi2(const DensityMatrix& rho) { return -std::log(purity(rho)); }

double von_neumann_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues(i);
    if (lambda < -kEigenClip)
      throw NumericalHealthError("density matrix eigenvalue " + std::to_string(lambda) + " below clip threshold");
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double von_neumann(const DensityMatrix& rho) { return von_neumann_of_spectrum(rho.eigenvalues()); }

EntropySample entropy_sample(int t, const DensityMatrix& rho) {
  EntropySample s;
  s.t = t;
  s.purity = purity(rho);
  s.s_linear = 1.0 - s.purity;
  s.s_renyi2 = -std::log(s.purity);
  s.s_vn = von_neumann(rho);
  return s;
}

RmtSaturation rmt_saturation(HilbertDim hd) {
  const double n = hd.value();
  const double p = 2.0 * n / (n * n + 1.0);
  return {p, 1.0 - p, std::log(n) - 0.5};
}

}  // namespace catotoc
