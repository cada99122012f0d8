#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "catotoc/errors.hpp"

namespace catotoc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance for lazily asserted operator properties.
inline constexpr double kClaimTolerance = 1e-10;

#ifdef NDEBUG
inline constexpr bool kVerifyClaims = false;
#else
inline constexpr bool kVerifyClaims = true;
#endif

/// Dimension of the Hilbert space of one torus degree of freedom.
/// The effective Planck constant is fixed by it: hbar = 1/(2 pi n).
class HilbertDim {
 public:
  explicit HilbertDim(int n) : n_(n) {
    if (n < 2) throw InvalidArgument("Hilbert dimension must be >= 2, got " + std::to_string(n));
  }
  int value() const noexcept { return n_; }
  double hbar() const noexcept { return 1.0 / (kTwoPi * n_); }
  friend bool operator==(HilbertDim, HilbertDim) = default;

 private:
  int n_;
};

/// Dimensions of a bipartite space. Composite index = j1 * second + j2.
struct Dims {
  int first = 0;
  int second = 0;
  int total() const noexcept { return first * second; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { first = 1, second = 2 };

enum class OpProperty : std::uint8_t {
  none = 0,
  hermitian = 1,
  unitary = 2,
  diagonal = 4,
};

constexpr OpProperty operator|(OpProperty a, OpProperty b) {
  return static_cast<OpProperty>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
constexpr bool has(OpProperty set, OpProperty p) {
  return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(p)) != 0;
}

/// Square complex matrix with optional claimed structure. Claims are
/// checked by verify_claims(); builders call it automatically in debug builds.
class ComplexOperator {
 public:
  ComplexOperator() = default;
  explicit ComplexOperator(Matrix m, OpProperty claimed = OpProperty::none);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  OpProperty claimed() const noexcept { return claimed_; }
  bool claims(OpProperty p) const noexcept { return has(claimed_, p); }

  // Max-norm residuals of the three structural properties.
  double hermiticity_residual() const;
  double unitarity_residual() const;
  double diagonality_residual() const;

  /// Throws NumericalHealthError when a claimed property misses `tol`.
  void verify_claims(double tol = kClaimTolerance) const;

  ComplexOperator adjoint() const;
  friend ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);

 private:
  Matrix m_;
  OpProperty claimed_ = OpProperty::none;
};

/// Unit-norm vector of amplitudes.
class StateVector {
 public:
  StateVector() = default;
  /// Requires |norm - 1| <= tol.
  explicit StateVector(Vector amplitudes, double tol = 1e-12);
  static StateVector normalized(Vector amplitudes);

  int dim() const noexcept { return static_cast<int>(v_.size()); }
  const Vector& amplitudes() const noexcept { return v_; }

 private:
  Vector v_;
};

enum class Validation {
  structural,  // hermiticity and trace
  full,        // plus eigenvalue positivity
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m, Validation v = Validation::full);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  /// Ascending real eigenvalues.
  RealVector eigenvalues() const;

 private:
  Matrix m_;
};

double max_abs(const Matrix& m);

}  // namespace catotoc
