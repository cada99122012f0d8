#pragma once

// Perturbed cat maps on the torus and their quantum propagators.

#include <array>
#include <string>

#include "catotoc/torus_hilbert.hpp"

namespace catotoc {

enum class MapKind { hyperbolic, elliptic };

std::string to_string(MapKind kind);

/// One torus degree of freedom: unimodular integer matrix plus kick strength.
/// The kick is eps(q) = -(k / 2 pi) sin(2 pi q).
struct MapSpec {
  std::array<std::array<int, 2>, 2> m{};
  double k = 0.0;

  static MapSpec hyperbolic(double k = 0.25) { return {{{{2, 1}, {3, 2}}}, k}; }
  static MapSpec elliptic(double k = 0.25) { return {{{{0, 1}, {-1, 0}}}, k}; }

  int trace() const noexcept { return m[0][0] + m[1][1]; }
  long long det() const noexcept {
    return static_cast<long long>(m[0][0]) * m[1][1] - static_cast<long long>(m[0][1]) * m[1][0];
  }
  /// Throws InvalidArgument when det != 1 or k is not finite, UnsupportedMap
  /// for parabolic (|trace| == 2) matrices.
  void validate() const;
  MapKind kind() const;
};

/// Two coupled degrees of freedom sharing Hilbert dimension n.
/// Coupling kappa(q1, q2) = -(kc / 2 pi) sin(2 pi (q1 + q2)).
struct CoupledSpec {
  MapSpec first;
  MapSpec second;
  double kc = 0.5;
  HilbertDim n{64};

  void validate() const;
  Dims dims() const { return {n.value(), n.value()}; }
};

/// Propagator in the position representation,
/// U_jk = A exp[i pi (M11 j^2 - 2 j k + M22 k^2) / (n M12)] exp[i k n cos(2 pi j / n) / (2 pi)],
/// A = (1 / (i n M12))^(1/2) on the principal branch. The kick phase sits on
/// the row (output) index.
ComplexOperator propagator_1d(const MapSpec& spec, HilbertDim n);

/// Diagonal C_{j1 j2} = exp[i n kc cos(2 pi (j1 + j2) / n) / (2 pi)] on the n^2 space.
ComplexOperator coupling_matrix(HilbertDim n, double kc);

/// Dense diag(C) (U1 (x) U2). Materializes an n^2 x n^2 matrix.
ComplexOperator propagator_2d(const CoupledSpec& spec, int max_dim = kDefaultMaxDenseDim);

/// One step of the coupled map kept in factored form: diag(C) (U1 (x) U2).
/// Application to a state costs two n x n products instead of an n^2 x n^2 one.
class FloquetPropagator {
 public:
  FloquetPropagator(Matrix u1, Matrix u2, Matrix coupling_phases);
  static FloquetPropagator build(const CoupledSpec& spec);

  Dims dims() const { return {static_cast<int>(u1_.rows()), static_cast<int>(u2_.rows())}; }
  int dim() const { return dims().total(); }
  const Matrix& u1() const { return u1_; }
  const Matrix& u2() const { return u2_; }
  /// n1 x n2 matrix of coupling phases C(j1, j2).
  const Matrix& coupling_phases() const { return phases_; }

  Vector apply(const Vector& psi) const;          // U psi
  Vector apply_adjoint(const Vector& psi) const;  // U^dagger psi
  Vector apply(const Vector& psi, int steps) const;
  Vector apply_adjoint(const Vector& psi, int steps) const;

  Matrix apply(const Matrix& x) const;           // U X
  Matrix apply_adjoint(const Matrix& x) const;   // U^dagger X
  Matrix heisenberg(const Matrix& x) const;      // U^dagger X U

  Matrix dense() const;
  FloquetPropagator with_global_phase(double phi) const;

 private:
  void apply_columns(Matrix& x, bool adjoint) const;

  Matrix u1_;
  Matrix u2_;
  Matrix phases_;
};

enum class PropagatorSide { left, heisenberg };

/// diag(C)(U1 (x) U2) psi without forming the n^2 x n^2 propagator.
StateVector apply_propagator_structured(const ComplexOperator& u1, const ComplexOperator& u2,
                                        const ComplexOperator& c_diag, const StateVector& target);

/// U X (side = left) or U^dagger X U (side = heisenberg) in factored form.
ComplexOperator apply_propagator_structured(const ComplexOperator& u1, const ComplexOperator& u2,
                                            const ComplexOperator& c_diag, const ComplexOperator& target,
                                            PropagatorSide side = PropagatorSide::left);

}  // namespace catotoc
