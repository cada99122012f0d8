#include "catotoc/otoc.hpp"

#include <cmath>
#include <numeric>

#include "catotoc/states.hpp"

namespace catotoc {

// ---- Observable ----------------------------------------------------------------

Observable Observable::dense(const ComplexOperator& op) {
  const bool herm = op.claims(OpProperty::hermitian) || op.hermiticity_residual() <= kClaimTolerance;
  return Observable(Dense{op.matrix()}, op.dim(), herm);
}

Observable Observable::product(const ComplexOperator& a, const ComplexOperator& b) {
  const bool herm = (a.claims(OpProperty::hermitian) || a.hermiticity_residual() <= kClaimTolerance) &&
                    (b.claims(OpProperty::hermitian) || b.hermiticity_residual() <= kClaimTolerance);
  return Observable(Product{a.matrix(), b.matrix()}, a.dim() * b.dim(), herm);
}

Observable Observable::projector(const StateVector& psi) {
  return Observable(Projector{psi.amplitudes()}, psi.dim(), true);
}

Matrix Observable::apply(const Matrix& columns) const {
  if (columns.rows() != dim_) throw DimensionMismatch("observable applied to vector of wrong dimension");
  return std::visit(
      [&](const auto& rep) -> Matrix {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Dense>) {
          return rep.m * columns;
        } else if constexpr (std::is_same_v<T, Product>) {
          // same transposed-block view as FloquetPropagator: B' = b B a^T
          const Eigen::Index n1 = rep.a.rows(), n2 = rep.b.rows(), cols = columns.cols();
          Matrix out(columns.rows(), cols);
          Eigen::Map<const Matrix> in_blocks(columns.data(), n2, n1 * cols);
          Eigen::Map<Matrix> out_blocks(out.data(), n2, n1 * cols);
          const Matrix y = rep.b * in_blocks;
          const Matrix at = rep.a.transpose();
          for (Eigen::Index c = 0; c < cols; ++c)
            out_blocks.middleCols(c * n1, n1).noalias() = y.middleCols(c * n1, n1) * at;
          return out;
        } else {
          return rep.psi * (rep.psi.adjoint() * columns);
        }
      },
      rep_);
}

Vector Observable::apply(const Vector& v) const {
  const Matrix m = v;
  return apply(m).col(0);
}

Matrix Observable::to_dense() const { return apply(Matrix(Matrix::Identity(dim_, dim_))); }

Observable position_2d(Dims dims) {
  return Observable::product(position_operator(HilbertDim(dims.first)), position_operator(HilbertDim(dims.second)));
}

Observable momentum_2d(Dims dims) {
  return Observable::product(momentum_operator(HilbertDim(dims.first)), momentum_operator(HilbertDim(dims.second)));
}

std::string_view to_string(Averaging avg) {
  return avg == Averaging::state_expectation ? "state_expectation" : "normalized_trace";
}

double CorrelatorSample::split_residual() const { return std::abs(c + 2.0 * (c4_real - c2) / norm_factor); }

// ---- evolution -----------------------------------------------------------------

ComplexOperator heisenberg_evolve(const ComplexOperator& a, const FloquetPropagator& u, int t) {
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  if (a.dim() != u.dim()) throw DimensionMismatch("operator dimension does not match propagator");
  Matrix m = a.matrix();
  for (int s = 0; s < t; ++s) m = u.heisenberg(m);
  const OpProperty kept = a.claims(OpProperty::hermitian) ? OpProperty::hermitian : OpProperty::none;
  if (has(kept, OpProperty::hermitian)) m = (0.5 * (m + m.adjoint())).eval();
  return ComplexOperator(std::move(m), kept);
}

namespace {

const Observable& resolve_a(const OtocConfig& cfg, Dims dims, std::optional<Observable>& storage) {
  switch (cfg.operator_a) {
    case OperatorA::x2d: storage = position_2d(dims); break;
    case OperatorA::p2d: storage = momentum_2d(dims); break;
    case OperatorA::custom:
      if (!cfg.custom_a) throw InvalidArgument("custom operator A requested but not provided");
      if (cfg.custom_a->dim() != dims.total()) throw DimensionMismatch("custom operator A has wrong dimension");
      return *cfg.custom_a;
  }
  return *storage;
}

const Observable& resolve_b(const OtocConfig& cfg, Dims dims, const StateVector& psi0,
                            std::optional<Observable>& storage) {
  switch (cfg.operator_b) {
    case OperatorB::p2d: storage = momentum_2d(dims); break;
    case OperatorB::initial_density: storage = Observable::projector(psi0); break;
    case OperatorB::custom:
      if (!cfg.custom_b) throw InvalidArgument("custom operator B requested but not provided");
      if (cfg.custom_b->dim() != dims.total()) throw DimensionMismatch("custom operator B has wrong dimension");
      return *cfg.custom_b;
  }
  return *storage;
}

// Sample from a = A(t) psi, ab = A(t) B psi, ba = B A(t) psi.
CorrelatorSample sample_from_vectors(int t, const Vector& ab, const Vector& ba) {
  CorrelatorSample s;
  s.t = t;
  s.c = (ba - ab).squaredNorm();
  s.c2 = 0.5 * (ba.squaredNorm() + ab.squaredNorm());
  const cplx c4 = ba.dot(ab);  // <B A psi | A B psi> = <psi| A B A B |psi>
  s.c4_real = c4.real();
  s.c4_imag = c4.imag();
  s.norm_factor = 1.0;
  return s;
}

void require_hermitian_pair(const Observable& a, const Observable& b) {
  if (!a.hermitian() || !b.hermitian())
    throw InvalidArgument("vector-path OTOC requires hermitian A and B");
}

CorrelatorSample dense_sample(const Observable& a, const Observable& b, const FloquetPropagator& u, int t,
                              Averaging average, const Matrix* rho) {
  const Matrix at = heisenberg_evolve(ComplexOperator(a.to_dense()), u, t).matrix();
  const Matrix bm = b.to_dense();
  const Matrix ab = at * bm;
  const Matrix ba = bm * at;
  const Matrix k = ab - ba;
  const Matrix kk = k * k.adjoint();
  const Matrix abab = ab * ab;
  CorrelatorSample s;
  s.t = t;
  if (average == Averaging::normalized_trace) {
    const double d = static_cast<double>(u.dim());
    s.c = kk.trace().real() / d;
    s.c2 = (at * at * bm * bm).trace().real();
    const cplx c4 = abab.trace();
    s.c4_real = c4.real();
    s.c4_imag = c4.imag();
    s.norm_factor = d;
  } else {
    const Matrix& r = *rho;
    s.c = (r * kk).trace().real();
    s.c2 = 0.5 * (r * (at * bm * bm * at + bm * at * at * bm)).trace().real();
    const cplx c4 = (r * abab).trace();
    s.c4_real = c4.real();
    s.c4_imag = c4.imag();
    s.norm_factor = 1.0;
  }
  return s;
}

}  // namespace

StateVector pure_state_of(const DensityMatrix& rho, double tol) {
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  if (std::abs(purity - 1.0) > tol) throw InvalidArgument("initial density matrix is not pure");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  return StateVector::normalized(es.eigenvectors().col(rho.dim() - 1));
}

CorrelatorSample otoc_full(const OtocConfig& cfg, const StateVector& psi0, const FloquetPropagator& u, int t) {
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  if (cfg.average != Averaging::state_expectation)
    throw InvalidArgument("the vector path computes state expectations only");
  if (psi0.dim() != u.dim()) throw DimensionMismatch("initial state does not match propagator");
  std::optional<Observable> sa, sb;
  const Observable& a = resolve_a(cfg, u.dims(), sa);
  const Observable& b = resolve_b(cfg, u.dims(), psi0, sb);
  require_hermitian_pair(a, b);
  Matrix cols(u.dim(), 2);
  cols.col(0) = psi0.amplitudes();
  cols.col(1) = b.apply(psi0.amplitudes());
  for (int s = 0; s < t; ++s) cols = u.apply(cols);
  cols = a.apply(cols);
  for (int s = 0; s < t; ++s) cols = u.apply_adjoint(cols);
  return sample_from_vectors(t, cols.col(1), b.apply(Vector(cols.col(0))));
}

CorrelatorSample otoc_full(const OtocConfig& cfg, const DensityMatrix& rho0, const FloquetPropagator& u, int t,
                           OtocPath path) {
  if (rho0.dim() != u.dim()) throw DimensionMismatch("initial state does not match propagator");
  const bool vector_capable = cfg.average == Averaging::state_expectation;
  if (path == OtocPath::vector || (path == OtocPath::automatic && vector_capable)) {
    if (!vector_capable) throw InvalidArgument("the vector path computes state expectations only");
    if (path == OtocPath::vector) return otoc_full(cfg, pure_state_of(rho0), u, t);
    const double purity = (rho0.matrix() * rho0.matrix()).trace().real();
    if (std::abs(purity - 1.0) <= 1e-10) return otoc_full(cfg, pure_state_of(rho0), u, t);
  }
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  std::optional<Observable> sa, sb;
  const Observable& a = resolve_a(cfg, u.dims(), sa);
  std::optional<Observable> rho_obs;
  const Observable* b = nullptr;
  if (cfg.operator_b == OperatorB::initial_density) {
    rho_obs = Observable::dense(ComplexOperator(rho0.matrix(), OpProperty::hermitian));
    b = &*rho_obs;
  } else {
    // psi only matters for initial_density, which is handled above
    b = &resolve_b(cfg, u.dims(), basis_state(u.dim(), 0), sb);
  }
  return dense_sample(a, *b, u, t, cfg.average, &rho0.matrix());
}

std::vector<std::vector<CorrelatorSample>> otoc_series(const Observable& a, std::span<const Observable> bs,
                                                       const StateVector& psi0, const FloquetPropagator& u,
                                                       int t_max) {
  if (t_max < 0) throw InvalidArgument("t_max must be nonnegative");
  if (psi0.dim() != u.dim() || a.dim() != u.dim()) throw DimensionMismatch("otoc_series dimension mismatch");
  for (const auto& b : bs) {
    if (b.dim() != u.dim()) throw DimensionMismatch("otoc_series dimension mismatch");
    require_hermitian_pair(a, b);
  }
  const Eigen::Index nb = static_cast<Eigen::Index>(bs.size());
  // column 0: U^t psi0, column 1 + i: U^t B_i psi0
  Matrix forward(u.dim(), nb + 1);
  forward.col(0) = psi0.amplitudes();
  for (Eigen::Index i = 0; i < nb; ++i) forward.col(i + 1) = bs[i].apply(psi0.amplitudes());

  std::vector<std::vector<CorrelatorSample>> out(bs.size());
  for (auto& series : out) series.reserve(t_max + 1);
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) forward = u.apply(forward);
    Matrix back = a.apply(forward);
    for (int s = 0; s < t; ++s) back = u.apply_adjoint(back);
    const Vector at_psi = back.col(0);
    for (Eigen::Index i = 0; i < nb; ++i)
      out[i].push_back(sample_from_vectors(t, back.col(i + 1), bs[i].apply(at_psi)));
  }
  return out;
}

Correlators correlators_2_4(const Observable& a, const Observable& b, const FloquetPropagator& u, int t,
                            Averaging average, const DensityMatrix& rho0) {
  if (a.dim() != u.dim() || b.dim() != u.dim() || rho0.dim() != u.dim())
    throw DimensionMismatch("correlators_2_4 dimension mismatch");
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  const CorrelatorSample s = dense_sample(a, b, u, t, average, &rho0.matrix());
  return {s.c2, cplx(s.c4_real, s.c4_imag), s.norm_factor};
}

// ---- OTOC / Renyi basis sum ----------------------------------------------------

std::vector<ComplexOperator> weyl_basis(HilbertDim hd) {
  const int n = hd.value();
  const Matrix u = clock_operator(hd).matrix();
  const Matrix v = shift_operator(hd).matrix();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexOperator> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  Matrix ua = Matrix::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    Matrix uavb = ua;
    for (int b = 0; b < n; ++b) {
      basis.emplace_back(scale * uavb);
      uavb = uavb * v;
    }
    ua = ua * u;
  }
  return basis;
}

namespace {

void check_basis(std::span<const ComplexOperator> basis, int n) {
  if (basis.size() != static_cast<std::size_t>(n) * n)
    throw InvalidArgument("incomplete operator basis: need " + std::to_string(n * n) + " elements");
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  Matrix stacked(static_cast<Eigen::Index>(n) * n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i].dim() != n) throw DimensionMismatch("basis element has wrong dimension");
    stacked.col(i) = Eigen::Map<const Vector>(basis[i].matrix().data(), n * n);
  }
  const Matrix gram = stacked.adjoint() * stacked;
  if (max_abs(gram - Matrix::Identity(m, m)) > 1e-10)
    throw InvalidArgument("incomplete operator basis: elements are not Hilbert-Schmidt orthonormal");
}

// Thermal-average basis sum (1/D) sum_M Tr(M(t) rho0 M(t)^dagger rho0) for pure rho0.
double raw_basis_sum(const StateVector& psi0, const FloquetPropagator& u, int t, Subsystem sub,
                     std::span<const ComplexOperator> basis) {
  const Dims d = u.dims();
  const ComplexOperator id1 = identity_operator(d.first), id2 = identity_operator(d.second);
  const Vector psi_t = u.apply(psi0.amplitudes(), t);
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  Matrix fwd(u.dim(), m), fwd_dag(u.dim(), m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const ComplexOperator& op = basis[i];
    const Observable full = sub == Subsystem::second ? Observable::product(id1, op) : Observable::product(op, id2);
    const Observable full_dag = sub == Subsystem::second ? Observable::product(id1, op.adjoint())
                                                         : Observable::product(op.adjoint(), id2);
    fwd.col(i) = full.apply(psi_t);
    fwd_dag.col(i) = full_dag.apply(psi_t);
  }
  for (int s = 0; s < t; ++s) {
    fwd = u.apply_adjoint(fwd);
    fwd_dag = u.apply_adjoint(fwd_dag);
  }
  const Vector& psi = psi0.amplitudes();
  cplx total{};
  for (Eigen::Index i = 0; i < m; ++i) {
    // Tr(M(t) rho0 M(t)^dagger rho0) = <psi|M(t)|psi> <psi|M(t)^dagger|psi>
    total += psi.dot(fwd.col(i)) * psi.dot(fwd_dag.col(i));
  }
  return total.real() / static_cast<double>(u.dim());
}

}  // namespace

double otoc_re_normalization(Dims dims) {
  const FloquetPropagator identity(Matrix::Identity(dims.first, dims.first),
                                   Matrix::Identity(dims.second, dims.second),
                                   Matrix::Ones(dims.first, dims.second));
  const StateVector ref = basis_state(dims.total(), 0);
  const auto basis = weyl_basis(HilbertDim(dims.second));
  return 1.0 / raw_basis_sum(ref, identity, 0, Subsystem::second, basis);
}

double otoc_re_sum(const StateVector& psi0, const FloquetPropagator& u, int t, Subsystem sub,
                   std::span<const ComplexOperator> basis) {
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  if (psi0.dim() != u.dim()) throw DimensionMismatch("initial state does not match propagator");
  const Dims d = u.dims();
  check_basis(basis, sub == Subsystem::second ? d.second : d.first);
  return otoc_re_normalization(d) * raw_basis_sum(psi0, u, t, sub, basis);
}

double otoc_re_sum(const StateVector& psi0, const FloquetPropagator& u, int t, Subsystem sub) {
  const Dims d = u.dims();
  const auto basis = weyl_basis(HilbertDim(sub == Subsystem::second ? d.second : d.first));
  return otoc_re_sum(psi0, u, t, sub, basis);
}

double otoc_re_sum(const DensityMatrix& rho0, const FloquetPropagator& u, int t, Subsystem sub) {
  return otoc_re_sum(pure_state_of(rho0), u, t, sub);
}

// ---- rescaling -----------------------------------------------------------------

double rescale_factor(std::span<const double> series, std::span<const double> reference) {
  if (series.size() != reference.size()) throw DimensionMismatch("series and reference lengths differ");
  double sr = 0.0, ss = 0.0, rr = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    sr += series[i] * reference[i];
    ss += series[i] * series[i];
    rr += reference[i] * reference[i];
  }
  if (!(ss > 0.0)) throw InvalidArgument("cannot rescale an all-zero series");
  if (!(rr > 0.0)) throw InvalidArgument("reference series is identically zero");
  return std::max(0.0, sr / ss);
}

std::vector<double> rescale_for_comparison(std::span<const double> series, std::span<const double> reference) {
  const double alpha = rescale_factor(series, reference);
  std::vector<double> out(series.begin(), series.end());
  for (double& x : out) x *= alpha;
  return out;
}

}  // namespace catotoc
