#pragma once

// Out-of-time-ordered correlators of the coupled map.
//
//   C(t)  = < [A(t), B] [A(t), B]^dagger >,   A(t) = U^-t A U^t
//   C2(t) = < A(t)^2 B^2 >,  C4(t) = < A(t) B A(t) B >
//
// With normalized_trace averaging <.> = Tr(.) / D and C = -2 (C4 - C2) / D.
// With state_expectation averaging <.> = Tr(rho0 .), the two-point term is
// taken in its symmetrized form (<A B^2 A> + <B A^2 B>) / 2 so that
// C = -2 (Re C4 - C2) holds exactly for any rho0; CorrelatorSample carries
// the normalization factor used (D or 1).

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "catotoc/catmap.hpp"

namespace catotoc {

/// Operator on the bipartite space, stored densely, as a product a (x) b, or
/// as the projector |psi><psi|.
class Observable {
 public:
  static Observable dense(const ComplexOperator& op);
  static Observable product(const ComplexOperator& a, const ComplexOperator& b);
  static Observable projector(const StateVector& psi);

  int dim() const noexcept { return dim_; }
  bool hermitian() const noexcept { return hermitian_; }
  Vector apply(const Vector& v) const;
  Matrix apply(const Matrix& columns) const;
  Matrix to_dense() const;

 private:
  struct Dense {
    Matrix m;
  };
  struct Product {
    Matrix a;
    Matrix b;
  };
  struct Projector {
    Vector psi;
  };
  Observable(std::variant<Dense, Product, Projector> rep, int dim, bool hermitian)
      : rep_(std::move(rep)), dim_(dim), hermitian_(hermitian) {}

  std::variant<Dense, Product, Projector> rep_;
  int dim_;
  bool hermitian_;
};

Observable position_2d(Dims dims);  // X (x) X
Observable momentum_2d(Dims dims);  // P (x) P

enum class OperatorA { x2d, p2d, custom };
enum class OperatorB { p2d, initial_density, custom };
enum class Averaging { state_expectation, normalized_trace };
enum class OtocPath { automatic, vector, dense };

std::string_view to_string(Averaging avg);

struct OtocConfig {
  OperatorA operator_a = OperatorA::x2d;
  OperatorB operator_b = OperatorB::p2d;
  Averaging average = Averaging::state_expectation;
  std::optional<Observable> custom_a;
  std::optional<Observable> custom_b;
};

struct CorrelatorSample {
  int t = 0;
  double c = 0.0;
  double c2 = 0.0;
  double c4_real = 0.0;
  double c4_imag = 0.0;
  double norm_factor = 1.0;

  /// |C + 2 (C4 - C2) / norm_factor|
  double split_residual() const;
};

inline constexpr double kSplitTolerance = 1e-8;

/// A(t) = (U^dagger)^t A U^t, one conjugation per step.
ComplexOperator heisenberg_evolve(const ComplexOperator& a, const FloquetPropagator& u, int t);

/// Full OTOC at time t. The vector path needs a pure rho0 and state
/// expectation averaging; `automatic` picks it whenever possible.
CorrelatorSample otoc_full(const OtocConfig& cfg, const DensityMatrix& rho0, const FloquetPropagator& u, int t,
                           OtocPath path = OtocPath::automatic);

/// Vector path for a pure initial state. Never materializes A(t).
CorrelatorSample otoc_full(const OtocConfig& cfg, const StateVector& psi0, const FloquetPropagator& u, int t);

/// C(t) for t = 0..t_max and several B operators sharing one A. Forward
/// evolution is incremental; A(t)|.> is obtained by one backward sweep per t.
/// Result is indexed [b][t].
std::vector<std::vector<CorrelatorSample>> otoc_series(const Observable& a, std::span<const Observable> bs,
                                                       const StateVector& psi0, const FloquetPropagator& u,
                                                       int t_max);

struct Correlators {
  double c2 = 0.0;
  cplx c4{};
  double norm_factor = 1.0;
};

Correlators correlators_2_4(const Observable& a, const Observable& b, const FloquetPropagator& u, int t,
                            Averaging average, const DensityMatrix& rho0);

/// Orthonormal (Hilbert-Schmidt) clock-shift basis {U^a V^b / sqrt(n)}.
std::vector<ComplexOperator> weyl_basis(HilbertDim n);

/// Scalar fixing the basis-sum normalization: the value that makes the
/// thermal-average sum equal Tr rho_1^2 = 1 for a product state at t = 0.
double otoc_re_normalization(Dims dims);

/// sum_M < M(t) rho0 M(t)^dagger rho0 > over a complete operator basis of
/// `basis_subsystem`, scaled by otoc_re_normalization. Equals Tr rho_1(t)^2.
double otoc_re_sum(const StateVector& psi0, const FloquetPropagator& u, int t,
                   Subsystem basis_subsystem = Subsystem::second);
double otoc_re_sum(const StateVector& psi0, const FloquetPropagator& u, int t, Subsystem basis_subsystem,
                   std::span<const ComplexOperator> basis);
/// Throws InvalidArgument when rho0 is not pure.
double otoc_re_sum(const DensityMatrix& rho0, const FloquetPropagator& u, int t,
                   Subsystem basis_subsystem = Subsystem::second);

/// Nonnegative least-squares alpha minimizing |alpha * series - reference|.
double rescale_factor(std::span<const double> series, std::span<const double> reference);
std::vector<double> rescale_for_comparison(std::span<const double> series, std::span<const double> reference);

/// The pure state underlying rho (dominant eigenvector); throws if Tr rho^2 != 1.
StateVector pure_state_of(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace catotoc
