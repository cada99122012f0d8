#include "catotoc/torus_hilbert.hpp"

#include <cmath>
#include <string>

namespace catotoc {

namespace {

ComplexOperator checked(ComplexOperator op) {
  if constexpr (kVerifyClaims) op.verify_claims();
  return op;
}

void require_dims(int dim, Dims dims) {
  if (dims.first < 1 || dims.second < 1 || dims.total() != dim) {
    throw DimensionMismatch("dimension " + std::to_string(dim) + " does not factor as " +
                            std::to_string(dims.first) + " x " + std::to_string(dims.second));
  }
}

}  // namespace

// ---- ComplexOperator / StateVector / DensityMatrix ----------------------------

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ComplexOperator::ComplexOperator(Matrix m, OpProperty claimed) : m_(std::move(m)), claimed_(claimed) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch("operator matrix must be square");
}

double ComplexOperator::hermiticity_residual() const { return max_abs(m_ - m_.adjoint()); }

double ComplexOperator::unitarity_residual() const {
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(dim(), dim()));
}

double ComplexOperator::diagonality_residual() const {
  Matrix off = m_;
  off.diagonal().setZero();
  return max_abs(off);
}

void ComplexOperator::verify_claims(double tol) const {
  if (claims(OpProperty::hermitian) && hermiticity_residual() > tol)
    throw NumericalHealthError("operator claimed hermitian but is not");
  if (claims(OpProperty::unitary) && unitarity_residual() > tol)
    throw NumericalHealthError("operator claimed unitary but is not");
  if (claims(OpProperty::diagonal) && diagonality_residual() > tol)
    throw NumericalHealthError("operator claimed diagonal but is not");
}

ComplexOperator ComplexOperator::adjoint() const { return ComplexOperator(m_.adjoint(), claimed_); }

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator product dimension mismatch");
  OpProperty common = OpProperty::none;
  if (a.claims(OpProperty::unitary) && b.claims(OpProperty::unitary)) common = common | OpProperty::unitary;
  if (a.claims(OpProperty::diagonal) && b.claims(OpProperty::diagonal)) common = common | OpProperty::diagonal;
  return ComplexOperator(a.matrix() * b.matrix(), common);
}

StateVector::StateVector(Vector amplitudes, double tol) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw InvalidArgument("empty state vector");
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > tol)
    throw InvalidArgument("state vector is not normalized (norm " + std::to_string(norm) + ")");
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("cannot normalize a zero vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

DensityMatrix::DensityMatrix(Matrix m, Validation v) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw DimensionMismatch("density matrix must be square");
  if (max_abs(m_ - m_.adjoint()) > 1e-12) throw InvalidArgument("density matrix is not hermitian");
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) throw InvalidArgument("density matrix trace is " + std::to_string(tr));
  if (v == Validation::full && eigenvalues().minCoeff() < -1e-10)
    throw InvalidArgument("density matrix has a negative eigenvalue");
}

RealVector DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ---- canonical operators -------------------------------------------------------

ComplexOperator identity_operator(int dim) {
  return ComplexOperator(Matrix::Identity(dim, dim),
                         OpProperty::hermitian | OpProperty::unitary | OpProperty::diagonal);
}

ComplexOperator shift_operator(HilbertDim hd) {
  const int n = hd.value();
  Matrix v = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) v((q + 1) % n, q) = 1.0;
  return checked(ComplexOperator(std::move(v), OpProperty::unitary));
}

ComplexOperator clock_operator(HilbertDim hd) {
  const int n = hd.value();
  Matrix u = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) u(q, q) = std::polar(1.0, kTwoPi * q / n);
  return checked(ComplexOperator(std::move(u), OpProperty::unitary | OpProperty::diagonal));
}

ComplexOperator position_operator(HilbertDim hd) {
  const int n = hd.value();
  Matrix x = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) x(q, q) = std::sin(kTwoPi * q / n);
  return checked(ComplexOperator(std::move(x), OpProperty::hermitian | OpProperty::diagonal));
}

ComplexOperator momentum_operator(HilbertDim hd) {
  const int n = hd.value();
  const cplx half_over_i(0.0, -0.5);  // 1/(2i)
  Matrix p = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    p((q + 1) % n, q) += half_over_i;
    p(q, (q + 1) % n) -= half_over_i;
  }
  return checked(ComplexOperator(std::move(p), OpProperty::hermitian));
}

ComplexOperator dft_matrix(HilbertDim hd) {
  const int n = hd.value();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      // reduce j*k mod n first so large n keeps full phase accuracy
      f(j, k) = std::polar(scale, kTwoPi * static_cast<double>((j * k) % n) / n);
  return checked(ComplexOperator(std::move(f), OpProperty::unitary));
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b, int max_dim) {
  const long long dim = static_cast<long long>(a.dim()) * b.dim();
  if (dim > max_dim)
    throw BudgetExceeded("tensor product dimension " + std::to_string(dim) + " exceeds maximum " +
                         std::to_string(max_dim));
  const int na = a.dim(), nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  OpProperty props = OpProperty::none;
  for (OpProperty p : {OpProperty::hermitian, OpProperty::unitary, OpProperty::diagonal})
    if (a.claims(p) && b.claims(p)) props = props | p;
  return checked(ComplexOperator(std::move(out), props));
}

// ---- partial traces ------------------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix& rho, Dims dims, Subsystem keep) {
  require_dims(rho.dim(), dims);
  const int n1 = dims.first, n2 = dims.second;
  const Matrix& r = rho.matrix();
  Matrix out;
  if (keep == Subsystem::first) {
    out = Matrix::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
      for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n2; ++j) out(i, k) += r(i * n2 + j, k * n2 + j);
  } else {
    out = Matrix::Zero(n2, n2);
    for (int j = 0; j < n2; ++j)
      for (int l = 0; l < n2; ++l)
        for (int i = 0; i < n1; ++i) out(j, l) += r(i * n2 + j, i * n2 + l);
  }
  // exact hermitian symmetrization of rounding noise
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(std::move(out), Validation::structural);
}

Matrix amplitude_matrix(const Vector& psi, Dims dims) {
  require_dims(static_cast<int>(psi.size()), dims);
  return Eigen::Map<const RowMajorMatrix>(psi.data(), dims.first, dims.second);
}

Vector flatten_amplitudes(const Matrix& m) {
  Vector out(m.size());
  Eigen::Map<RowMajorMatrix>(out.data(), m.rows(), m.cols()) = m;
  return out;
}

DensityMatrix partial_trace_pure(const StateVector& psi, Dims dims, Subsystem keep) {
  const Matrix m = amplitude_matrix(psi.amplitudes(), dims);
  Matrix out = keep == Subsystem::first ? Matrix(m * m.adjoint()) : Matrix(m.transpose() * m.conjugate());
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(std::move(out), Validation::structural);
}

}  // namespace catotoc
