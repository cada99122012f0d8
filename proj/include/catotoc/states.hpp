#pragma once

#include "catotoc/torus_hilbert.hpp"

namespace catotoc {

/// Point on the unit torus; coordinates are reduced mod 1 on construction.
class PhasePoint {
 public:
  PhasePoint(double q, double p);
  double q() const noexcept { return q_; }
  double p() const noexcept { return p_; }

 private:
  double q_;
  double p_;
};

double wrap_unit(double x);

/// Number of periodic images on each side used by coherent_state.
int coherent_state_images(HilbertDim n);

/// Periodized minimal-uncertainty Gaussian centered at `center`:
/// psi_j ~ sum_m exp[-pi n (j/n - q0 - m)^2 + 2 pi i n p0 (j/n - m)], unit norm.
StateVector coherent_state(HilbertDim n, PhasePoint center);

/// psi[j1 * n2 + j2] = psi1[j1] psi2[j2].
StateVector product_state(const StateVector& psi1, const StateVector& psi2);

/// |psi><psi|; throws InvalidArgument if psi is not normalized.
DensityMatrix density_of(const StateVector& psi);

/// |j> in dimension n.
StateVector basis_state(int dim, int j);

}  // namespace catotoc
