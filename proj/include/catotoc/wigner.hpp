#pragma once

// Operator-Schmidt spectra, the Wigner separability entropy (WSE), and a
// discrete Wigner function on the 2n x 2n half-integer torus lattice.

#include <string_view>
#include <vector>

#include "catotoc/torus_hilbert.hpp"

namespace catotoc {

struct SchmidtSpectrum {
  std::vector<double> sigmas;  // nonincreasing, as computed
  double norm = 0.0;           // sqrt(sum sigma^2)

  std::vector<double> normalized() const;
};

/// Singular values below this (after normalization) do not enter the WSE.
inline constexpr double kSchmidtFloor = 1e-14;

/// Singular values of the reshuffled matrix R[(j1,k1),(j2,k2)] = rho[(j1,j2),(k1,k2)].
SchmidtSpectrum operator_schmidt(const DensityMatrix& rho, Dims dims);

/// h = -sum sigma~^2 ln sigma~^2 with sigma~ = sigma / norm.
double wse(const SchmidtSpectrum& spectrum);

/// Schmidt coefficients of a bipartite pure state (singular values of its amplitude matrix).
std::vector<double> state_schmidt_coefficients(const StateVector& psi, Dims dims);

/// WSE of |psi><psi| from the state Schmidt coefficients s_i: the operator
/// spectrum is {s_i s_j}, so no n^2 x n^2 decomposition is needed.
double wse_pure_fast(const StateVector& psi, Dims dims);

/// Grid point (q, p) sits at phase-space point (q / 2n, p / 2n):
///   W(q, p) = (1 / 2n) sum_a <q - a| rho |a> exp(i pi (2a - q) p / n),
/// i.e. Tr(R_x rho) / 2n with R_x the reflection |a> -> |q - a| dressed by the
/// momentum phase. The grid sums to 1; summing over p at even q = 2j gives
/// <j|rho|j>, summing over q at even p = 2k gives <p_k|rho|p_k>.
inline constexpr std::string_view kWignerConvention =
    "reflection-2n-lattice: W(q,p) = (1/2n) sum_a <q-a|rho|a> exp(i pi (2a-q) p / n)";

struct WignerBudget {
  int max_n_one_mode = 256;
  int max_n_two_mode = 8;
};

struct WignerGrid {
  int n = 0;     // Hilbert dimension per degree of freedom
  int dofs = 0;  // 1 or 2
  std::vector<double> values;
  double max_imag_residue = 0.0;

  int side() const noexcept { return 2 * n; }
  /// 1-DOF access.
  double at(int q, int p) const { return values[static_cast<std::size_t>(q) * side() + p]; }
  /// 2-DOF access.
  double at(int q1, int p1, int q2, int p2) const {
    const std::size_t s = side();
    return values[((static_cast<std::size_t>(q1) * s + p1) * s + q2) * s + p2];
  }
  /// 2-DOF grid flattened with rows (q1, p1) and columns (q2, p2).
  RealMatrix as_matrix() const;
};

inline constexpr double kWignerImagTolerance = 1e-9;

/// One-mode grid when rho.dim() == n, two-mode grid when rho.dim() == n^2.
WignerGrid wigner_grid(const DensityMatrix& rho, HilbertDim n, WignerBudget budget = {});

std::vector<double> position_marginal(const WignerGrid& grid);  // length n
std::vector<double> momentum_marginal(const WignerGrid& grid);  // length n, DFT basis
double grid_inner_product(const WignerGrid& a, const WignerGrid& b);

struct WignerSchmidtReport {
  std::vector<double> grid_spectrum;      // normalized
  std::vector<double> operator_spectrum;  // normalized
  double max_deviation = 0.0;             // relative to the leading value
};

/// Compares the singular spectrum of the flattened two-mode Wigner grid with
/// the operator-Schmidt spectrum of rho.
WignerSchmidtReport wigner_schmidt_crosscheck(const DensityMatrix& rho, Dims dims, WignerBudget budget = {});

}  // namespace catotoc
