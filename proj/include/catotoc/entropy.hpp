#pragma once

// Entanglement scalars of reduced density matrices. All logarithms are natural.

#include <string_view>

#include "catotoc/torus_hilbert.hpp"

namespace catotoc {

/// Eigenvalues in [-kEigenClip, 0) are treated as zero; anything more
/// negative raises NumericalHealthError.
inline constexpr double kEigenClip = 1e-10;

double purity(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);
double von_neumann(const DensityMatrix& rho);
double renyi2(const DensityMatrix& rho);

/// Von Neumann entropy of a probability spectrum, with the clipping rule.
double von_neumann_of_spectrum(const RealVector& eigenvalues);

struct EntropySample {
  int t = 0;
  double s_linear = 0.0;
  double s_vn = 0.0;
  double s_renyi2 = 0.0;
  double purity = 1.0;
};

EntropySample entropy_sample(int t, const DensityMatrix& rho);

/// Haar-average references for an n x n bipartite pure state.
struct RmtSaturation {
  double purity_sat;  // 2n / (n^2 + 1), exact Haar mean
  double s_l_sat;     // 1 - purity_sat
  double s_vn_sat;    // ln n - 1/2, large-n asymptote of the Page value
  static constexpr std::string_view purity_provenance = "exact Haar mean 2n/(n^2+1)";
  static constexpr std::string_view s_vn_provenance = "asymptotic Page value ln(n) - 1/2";
};

RmtSaturation rmt_saturation(HilbertDim n);

}  // namespace catotoc
