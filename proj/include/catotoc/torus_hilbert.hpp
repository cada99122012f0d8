#pragma once

// Finite Hilbert space of one torus degree of freedom, its canonical
// operators, and the bipartite plumbing (tensor products, partial traces).
//
// Conventions:
//   position basis |j>, j = 0..n-1, at q = j/n
//   <q_j|p_k> = exp(+2 pi i j k / n) / sqrt(n)
//   momentum_operator has eigenvalue -sin(2 pi k / n) on |p_k>
//   bipartite index = j1 * n2 + j2 (subsystem 1 outer)

#include <string_view>

#include "catotoc/types.hpp"

namespace catotoc {

inline constexpr std::string_view kDftConvention = "<q_j|p_k> = exp(+2 pi i j k / n) / sqrt(n)";

/// Largest composite dimension tensor_product will materialize by default.
inline constexpr int kDefaultMaxDenseDim = 4096;

/// Cyclic shift V: |q> -> |q+1 mod n>.
ComplexOperator shift_operator(HilbertDim n);

/// Clock U = diag(exp(2 pi i q / n)).
ComplexOperator clock_operator(HilbertDim n);

/// X = (U - U^dagger) / 2i, diagonal with entries sin(2 pi q / n).
ComplexOperator position_operator(HilbertDim n);

/// P = (V - V^dagger) / 2i.
ComplexOperator momentum_operator(HilbertDim n);

/// Columns are momentum eigenstates: F_{jk} = exp(+2 pi i j k / n) / sqrt(n).
ComplexOperator dft_matrix(HilbertDim n);

ComplexOperator identity_operator(int dim);

/// Kronecker product a (x) b, with a acting on the outer (slow) index.
ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b,
                               int max_dim = kDefaultMaxDenseDim);

DensityMatrix partial_trace(const DensityMatrix& rho, Dims dims, Subsystem keep);

/// Reduced state of |psi><psi| via the n1 x n2 amplitude matrix M:
/// rho_1 = M M^dagger, rho_2 = (M^T M^*).
DensityMatrix partial_trace_pure(const StateVector& psi, Dims dims, Subsystem keep);

/// Amplitudes reshaped to an n1 x n2 matrix, M(j1, j2) = psi[j1 * n2 + j2].
Matrix amplitude_matrix(const Vector& psi, Dims dims);
Vector flatten_amplitudes(const Matrix& m);

}  // namespace catotoc
