#include "catotoc/catmap.hpp"

#include <cmath>
#include <cstdlib>

namespace catotoc {

std::string to_string(MapKind kind) { return kind == MapKind::hyperbolic ? "hyperbolic" : "elliptic"; }

void MapSpec::validate() const {
  if (!std::isfinite(k)) throw InvalidArgument("kick strength must be finite");
  if (det() != 1) throw InvalidArgument("map matrix must have determinant 1, got " + std::to_string(det()));
  if (std::abs(trace()) == 2) throw UnsupportedMap("parabolic map (|trace| = 2) is not supported");
}

MapKind MapSpec::kind() const {
  validate();
  return std::abs(trace()) > 2 ? MapKind::hyperbolic : MapKind::elliptic;
}

void CoupledSpec::validate() const {
  first.validate();
  second.validate();
  if (!std::isfinite(kc)) throw InvalidArgument("coupling strength must be finite");
}

ComplexOperator propagator_1d(const MapSpec& spec, HilbertDim hd) {
  spec.validate();
  const int m12 = spec.m[0][1];
  if (m12 == 0) throw UnsupportedMap("propagator formula requires M12 != 0");
  const long long n = hd.value();
  const long long m11 = spec.m[0][0], m22 = spec.m[1][1];
  // exp(i pi x / (n M12)) has period 2 n |M12| in the integer x
  const long long period = 2 * n * std::llabs(m12);
  const double phase_unit = kPi / static_cast<double>(n * m12);
  const cplx amp = std::sqrt(cplx(1.0, 0.0) / cplx(0.0, static_cast<double>(n * m12)));
  const double kick = spec.k * static_cast<double>(n) / kTwoPi;

  Matrix u(n, n);
  for (long long j = 0; j < n; ++j) {
    const double kick_phase = kick * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    for (long long k = 0; k < n; ++k) {
      long long x = (m11 * j * j - 2 * j * k + m22 * k * k) % period;
      const double phase = phase_unit * static_cast<double>(x) + kick_phase;
      u(j, k) = amp * std::polar(1.0, phase);
    }
  }
  ComplexOperator op(std::move(u), OpProperty::unitary);
  if constexpr (kVerifyClaims) op.verify_claims(1e-8);
  return op;
}

namespace {

Matrix coupling_phase_grid(int n, double kc) {
  Matrix c(n, n);
  const double scale = n * kc / kTwoPi;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) c(j1, j2) = std::polar(1.0, scale * std::cos(kTwoPi * ((j1 + j2) % n) / n));
  return c;
}

}  // namespace

ComplexOperator coupling_matrix(HilbertDim hd, double kc) {
  if (!std::isfinite(kc)) throw InvalidArgument("coupling strength must be finite");
  const int n = hd.value();
  const Matrix grid = coupling_phase_grid(n, kc);
  Matrix c = Matrix::Zero(n * n, n * n);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) c(j1 * n + j2, j1 * n + j2) = grid(j1, j2);
  return ComplexOperator(std::move(c), OpProperty::unitary | OpProperty::diagonal);
}

ComplexOperator propagator_2d(const CoupledSpec& spec, int max_dim) {
  spec.validate();
  const int n = spec.n.value();
  if (static_cast<long long>(n) * n > max_dim)
    throw BudgetExceeded("dense two-mode propagator of dimension " + std::to_string(n * n) +
                         " exceeds maximum " + std::to_string(max_dim));
  return ComplexOperator(FloquetPropagator::build(spec).dense(), OpProperty::unitary);
}

// ---- FloquetPropagator ---------------------------------------------------------

FloquetPropagator::FloquetPropagator(Matrix u1, Matrix u2, Matrix coupling_phases)
    : u1_(std::move(u1)), u2_(std::move(u2)), phases_(std::move(coupling_phases)) {
  if (u1_.rows() != u1_.cols() || u2_.rows() != u2_.cols() || phases_.rows() != u1_.rows() ||
      phases_.cols() != u2_.rows())
    throw DimensionMismatch("inconsistent factored propagator dimensions");
}

FloquetPropagator FloquetPropagator::build(const CoupledSpec& spec) {
  spec.validate();
  return FloquetPropagator(propagator_1d(spec.first, spec.n).matrix(), propagator_1d(spec.second, spec.n).matrix(),
                           coupling_phase_grid(spec.n.value(), spec.kc));
}

// Amplitude vectors are stored row-major in (j1, j2), which is the
// column-major layout of the n2 x n1 transpose B = Psi^T. In that view
// U psi reads B' = C^T o (U2 B U1^T).
void FloquetPropagator::apply_columns(Matrix& x, bool adjoint) const {
  const Dims d = dims();
  const Eigen::Index n1 = d.first, n2 = d.second, cols = x.cols();
  if (x.rows() != d.total()) throw DimensionMismatch("target dimension does not match propagator");
  Eigen::Map<Matrix> blocks(x.data(), n2, n1 * cols);
  if (!adjoint) {
    const Matrix u1t = u1_.transpose();
    const Matrix pt = phases_.transpose();
    const Matrix y = u2_ * blocks;
    for (Eigen::Index c = 0; c < cols; ++c)
      blocks.middleCols(c * n1, n1).noalias() = (y.middleCols(c * n1, n1) * u1t).cwiseProduct(pt);
  } else {
    const Matrix u1c = u1_.conjugate();
    const Matrix pt = phases_.transpose().conjugate();
    for (Eigen::Index c = 0; c < cols; ++c) blocks.middleCols(c * n1, n1).array() *= pt.array();
    const Matrix y = u2_.adjoint() * blocks;
    for (Eigen::Index c = 0; c < cols; ++c) blocks.middleCols(c * n1, n1).noalias() = y.middleCols(c * n1, n1) * u1c;
  }
}

Vector FloquetPropagator::apply(const Vector& psi) const {
  Matrix x = psi;
  apply_columns(x, false);
  return x.col(0);
}

Vector FloquetPropagator::apply_adjoint(const Vector& psi) const {
  Matrix x = psi;
  apply_columns(x, true);
  return x.col(0);
}

Vector FloquetPropagator::apply(const Vector& psi, int steps) const {
  Matrix x = psi;
  for (int s = 0; s < steps; ++s) apply_columns(x, false);
  return x.col(0);
}

Vector FloquetPropagator::apply_adjoint(const Vector& psi, int steps) const {
  Matrix x = psi;
  for (int s = 0; s < steps; ++s) apply_columns(x, true);
  return x.col(0);
}

Matrix FloquetPropagator::apply(const Matrix& x) const {
  Matrix out = x;
  apply_columns(out, false);
  return out;
}

Matrix FloquetPropagator::apply_adjoint(const Matrix& x) const {
  Matrix out = x;
  apply_columns(out, true);
  return out;
}

Matrix FloquetPropagator::heisenberg(const Matrix& x) const {
  // X U = (U^dagger X^dagger)^dagger
  Matrix xu = x.adjoint();
  apply_columns(xu, true);
  xu.adjointInPlace();
  apply_columns(xu, true);
  return xu;
}

Matrix FloquetPropagator::dense() const {
  const Dims d = dims();
  const int n1 = d.first, n2 = d.second;
  Matrix out(d.total(), d.total());
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n1; ++k) out.block(i * n2, k * n2, n2, n2) = u1_(i, k) * u2_;
  for (int j1 = 0; j1 < n1; ++j1)
    for (int j2 = 0; j2 < n2; ++j2) out.row(j1 * n2 + j2) *= phases_(j1, j2);
  return out;
}

FloquetPropagator FloquetPropagator::with_global_phase(double phi) const {
  return FloquetPropagator(u1_, u2_, phases_ * std::polar(1.0, phi));
}

// ---- free-function structured application --------------------------------------

namespace {

FloquetPropagator from_operators(const ComplexOperator& u1, const ComplexOperator& u2,
                                 const ComplexOperator& c_diag) {
  const int n1 = u1.dim(), n2 = u2.dim();
  if (c_diag.dim() != n1 * n2) throw DimensionMismatch("coupling diagonal must have dimension n1 * n2");
  Matrix phases(n1, n2);
  for (int j1 = 0; j1 < n1; ++j1)
    for (int j2 = 0; j2 < n2; ++j2) phases(j1, j2) = c_diag.matrix()(j1 * n2 + j2, j1 * n2 + j2);
  return FloquetPropagator(u1.matrix(), u2.matrix(), std::move(phases));
}

}  // namespace

StateVector apply_propagator_structured(const ComplexOperator& u1, const ComplexOperator& u2,
                                        const ComplexOperator& c_diag, const StateVector& target) {
  const FloquetPropagator prop = from_operators(u1, u2, c_diag);
  if (target.dim() != prop.dim()) throw DimensionMismatch("state dimension does not match propagator");
  return StateVector(prop.apply(target.amplitudes()), 1e-10);
}

ComplexOperator apply_propagator_structured(const ComplexOperator& u1, const ComplexOperator& u2,
                                            const ComplexOperator& c_diag, const ComplexOperator& target,
                                            PropagatorSide side) {
  const FloquetPropagator prop = from_operators(u1, u2, c_diag);
  if (target.dim() != prop.dim()) throw DimensionMismatch("operator dimension does not match propagator");
  if (side == PropagatorSide::left) return ComplexOperator(prop.apply(target.matrix()));
  const OpProperty kept = target.claims(OpProperty::hermitian) ? OpProperty::hermitian : OpProperty::none;
  return ComplexOperator(prop.heisenberg(target.matrix()), kept);
}

}  // namespace catotoc
