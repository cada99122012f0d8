#include "catotoc/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "catotoc/classical.hpp"
#include "catotoc/entropy.hpp"
#include "catotoc/harness/figures.hpp"
#include "catotoc/harness/output.hpp"
#include "catotoc/otoc.hpp"
#include "catotoc/random.hpp"
#include "catotoc/states.hpp"
#include "catotoc/wigner.hpp"

namespace catotoc::harness {

std::string_view to_string(VerifyLevel level) { return level == VerifyLevel::fast ? "fast" : "full"; }

bool VerifyReport::all_passed() const { return failures() == 0; }

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

namespace {

struct Ctx {
  bool full;
  std::vector<int> sizes(std::initializer_list<int> fast, std::initializer_list<int> full_sizes) const {
    return full ? std::vector<int>(full_sizes) : std::vector<int>(fast);
  }
};

std::vector<CoupledSpec> scenario_specs(int n, double kc = 0.5) {
  const MapSpec h = MapSpec::hyperbolic(0.25), e = MapSpec::elliptic(0.25);
  return {{e, e, kc, HilbertDim(n)}, {h, e, kc, HilbertDim(n)}, {h, h, kc, HilbertDim(n)}};
}

StateVector initial_state(int n, double q = 0.5, double p = 0.5) {
  const auto c = coherent_state(HilbertDim(n), PhasePoint(q, p));
  return product_state(c, c);
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

// ---- torus_hilbert ----

double weyl_relation(const Ctx& c) {
  double worst = 0.0;
  const int top = c.full ? 64 : 8;
  for (int n = 2; n <= top; ++n) {
    const HilbertDim hd(n);
    const Matrix z = clock_operator(hd).matrix(), x = shift_operator(hd).matrix();
    worst = std::max(worst, max_abs_diff(z * x, std::polar(1.0, kTwoPi / n) * x * z));
  }
  return worst;
}

double position_momentum_hermitian(const Ctx& c) {
  double worst = 0.0;
  for (int n : c.sizes({2, 3, 4, 8}, {2, 3, 4, 8, 16, 32, 64})) {
    worst = std::max(worst, position_operator(HilbertDim(n)).hermiticity_residual());
    worst = std::max(worst, momentum_operator(HilbertDim(n)).hermiticity_residual());
  }
  return worst;
}

// F^dagger P F = -X in the +i DFT convention
double dft_equivalence(const Ctx& c) {
  double worst = 0.0;
  for (int n : c.sizes({3, 4, 8}, {3, 4, 8, 16, 32, 64})) {
    const HilbertDim hd(n);
    const Matrix f = dft_matrix(hd).matrix();
    worst = std::max(worst, max_abs(f.adjoint() * momentum_operator(hd).matrix() * f + position_operator(hd).matrix()));
  }
  return worst;
}

double partial_trace_health(const Ctx&) {
  Rng rng(11);
  double worst = 0.0;
  for (const Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{4, 4}}) {
    for (int s = 0; s < 200; ++s) {
      const DensityMatrix rho = random_density(d.total(), 1 + s % d.total(), rng);
      for (Subsystem keep : {Subsystem::first, Subsystem::second}) {
        const DensityMatrix r = partial_trace(rho, d, keep);
        worst = std::max(worst, std::abs(r.matrix().trace().real() - 1.0));
        worst = std::max(worst, std::max(0.0, -r.eigenvalues()(0)));
      }
    }
  }
  return worst;
}

// (V (x) I) rho1 (x) rho2 (V (x) I)^dagger traced to the first factor gives V rho1 V^dagger
double tensor_ordering(const Ctx&) {
  Rng rng(12);
  double worst = 0.0;
  for (const Dims d : {Dims{2, 3}, Dims{3, 2}, Dims{4, 4}}) {
    const DensityMatrix r1 = random_density(d.first, d.first, rng), r2 = random_density(d.second, d.second, rng);
    const Matrix v1 = random_unitary(d.first, rng), v2 = random_unitary(d.second, rng);
    const ComplexOperator rho = tensor_product(ComplexOperator(r1.matrix()), ComplexOperator(r2.matrix()));
    const ComplexOperator w1 = tensor_product(ComplexOperator(v1), identity_operator(d.second));
    const ComplexOperator w2 = tensor_product(identity_operator(d.first), ComplexOperator(v2));
    const Matrix m1 = w1.matrix() * rho.matrix() * w1.matrix().adjoint();
    const Matrix m2 = w2.matrix() * rho.matrix() * w2.matrix().adjoint();
    const DensityMatrix k1 = partial_trace(DensityMatrix((m1 + m1.adjoint()) / 2.0), d, Subsystem::first);
    const DensityMatrix k2 = partial_trace(DensityMatrix((m2 + m2.adjoint()) / 2.0), d, Subsystem::second);
    worst = std::max(worst, max_abs_diff(k1.matrix(), v1 * r1.matrix() * v1.adjoint()));
    worst = std::max(worst, max_abs_diff(k2.matrix(), v2 * r2.matrix() * v2.adjoint()));
    worst = std::max(worst, max_abs_diff(partial_trace(DensityMatrix(rho.matrix()), d, Subsystem::second).matrix(), r2.matrix()));
  }
  return worst;
}

double claimed_properties(const Ctx& c) {
  double worst = 0.0;
  for (int n : c.sizes({2, 4, 8}, {2, 4, 8, 16, 32, 64})) {
    const HilbertDim hd(n);
    for (const ComplexOperator& op : {shift_operator(hd), clock_operator(hd), position_operator(hd),
                                      momentum_operator(hd), dft_matrix(hd),
                                      propagator_1d(MapSpec::hyperbolic(), hd), propagator_1d(MapSpec::elliptic(), hd)}) {
      if (op.claims(OpProperty::hermitian)) worst = std::max(worst, op.hermiticity_residual());
      if (op.claims(OpProperty::unitary)) worst = std::max(worst, op.unitarity_residual());
      if (op.claims(OpProperty::diagonal)) worst = std::max(worst, op.diagonality_residual());
    }
  }
  return worst;
}

// ---- catmap ----

double propagator_unitarity(const Ctx& c) {
  double worst = 0.0;
  for (int n : c.sizes({4, 8}, {4, 8, 16, 32, 64})) {
    for (const auto& spec : scenario_specs(n)) {
      worst = std::max(worst, propagator_1d(spec.first, spec.n).unitarity_residual());
      worst = std::max(worst, propagator_1d(spec.second, spec.n).unitarity_residual());
      const FloquetPropagator u = FloquetPropagator::build(spec);
      const Matrix utu = u.apply_adjoint(u.dense());
      worst = std::max(worst, max_abs(utu - Matrix::Identity(u.dim(), u.dim())));
    }
  }
  return worst;
}

double structured_vs_dense(const Ctx& c) {
  Rng rng(21);
  double worst = 0.0;
  for (int n : c.sizes({4, 8}, {4, 8, 16})) {
    for (const auto& spec : scenario_specs(n)) {
      const FloquetPropagator u = FloquetPropagator::build(spec);
      const Matrix dense = coupling_matrix(spec.n, spec.kc).matrix() *
                           tensor_product(propagator_1d(spec.first, spec.n), propagator_1d(spec.second, spec.n)).matrix();
      for (int s = 0; s < 50; ++s) {
        const Vector v = gaussian_vector(u.dim(), rng);
        worst = std::max(worst, (u.apply(v) - dense * v).cwiseAbs().maxCoeff());
        worst = std::max(worst, (u.apply_adjoint(v) - dense.adjoint() * v).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

// Quantum <sin 2 pi q1> against the Liouville average of a Gaussian ensemble with
// the coherent-state width. The ensemble starts one inverse kick back so the
// kick-first classical map and the kick-last propagator see the same q sequence.
double ehrenfest_liouville(const Ctx& c, int steps) {
  const int n = c.full ? 64 : 8;
  const auto spec = scenario_specs(n)[2];
  const PhasePoint x0(0.3, 0.6), y0(0.55, 0.35);
  const FloquetPropagator u = FloquetPropagator::build(spec);
  Vector psi = product_state(coherent_state(spec.n, x0), coherent_state(spec.n, y0)).amplitudes();
  const Observable x1 = Observable::product(position_operator(spec.n), identity_operator(n));

  Rng rng(31);
  const double sigma = std::sqrt(1.0 / (4.0 * kPi * n));
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<ClassicalPoint4D> pts(20000);
  for (auto& p : pts) {
    p = {wrap_unit(x0.q() + g(rng)), wrap_unit(x0.p() + g(rng)), wrap_unit(y0.q() + g(rng)), wrap_unit(y0.p() + g(rng))};
    const double kappa = coupling_kick(spec.kc, p.q1, p.q2);
    p.p1 = wrap_unit(p.p1 - kick(spec.first.k, p.q1) - kappa);
    p.p2 = wrap_unit(p.p2 - kick(spec.second.k, p.q2) - kappa);
  }
  double worst = 0.0;
  for (int t = 0; t <= steps; ++t) {
    if (t > 0) {
      psi = u.apply(psi);
      for (auto& p : pts) p = step_2d(p, spec);
    }
    const double quantum = psi.dot(x1.apply(psi)).real();
    double classical = 0.0;
    for (const auto& p : pts) classical += std::sin(kTwoPi * p.q1);
    classical /= static_cast<double>(pts.size());
    worst = std::max(worst, std::abs(quantum - classical));
  }
  return worst;
}

double global_phase(const Ctx&) {
  const int n = 8;
  double worst = 0.0;
  for (const auto& spec : scenario_specs(n)) {
    const FloquetPropagator u = FloquetPropagator::build(spec), v = u.with_global_phase(0.7);
    const StateVector psi = initial_state(n, 0.3, 0.7);
    const std::vector<Observable> bs{momentum_2d(spec.dims()), Observable::projector(psi)};
    const auto a = otoc_series(position_2d(spec.dims()), bs, psi, u, 8);
    const auto b = otoc_series(position_2d(spec.dims()), bs, psi, v, 8);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t t = 0; t < a[i].size(); ++t) worst = std::max(worst, std::abs(a[i][t].c - b[i][t].c));
    Vector pu = psi.amplitudes(), pv = psi.amplitudes();
    for (int t = 0; t < 8; ++t) {
      pu = u.apply(pu);
      pv = v.apply(pv);
      const double su = von_neumann(partial_trace_pure(StateVector(pu, 1e-10), spec.dims(), Subsystem::first));
      const double sv = von_neumann(partial_trace_pure(StateVector(pv, 1e-10), spec.dims(), Subsystem::first));
      worst = std::max(worst, std::abs(su - sv));
    }
  }
  return worst;
}

// ---- states ----

double translational_covariance(const Ctx& c) {
  const int n = c.full ? 32 : 8;
  const HilbertDim hd(n);
  const Matrix x = shift_operator(hd).matrix();
  double worst = 0.0;
  for (const auto& [q, p] : {std::pair{0.3, 0.6}, std::pair{0.5, 0.5}, std::pair{0.9, 0.1}}) {
    const Vector a = x * coherent_state(hd, PhasePoint(q, p)).amplitudes();
    const Vector b = coherent_state(hd, PhasePoint(q + 1.0 / n, p)).amplitudes();
    worst = std::max(worst, 1.0 - std::norm(a.dot(b)));
  }
  return worst;
}

// circular mean and wrapped variance of a distribution on Z_n, in units of 1/n
double wrapped_variance(const std::vector<double>& prob) {
  const int n = static_cast<int>(prob.size());
  cplx m{};
  for (int j = 0; j < n; ++j) m += prob[j] * std::polar(1.0, kTwoPi * j / n);
  const double mean = std::arg(m) / kTwoPi;
  double var = 0.0;
  for (int j = 0; j < n; ++j) {
    double d = static_cast<double>(j) / n - mean;
    d -= std::round(d);
    var += prob[j] * d * d;
  }
  return var;
}

double uncertainty_balance(const Ctx& c) {
  const int n = c.full ? 64 : 16;
  const HilbertDim hd(n);
  const Matrix f = dft_matrix(hd).matrix();
  double worst = 0.0;
  for (const auto& [q, p] : {std::pair{0.5, 0.5}, std::pair{0.5, 0.0}, std::pair{0.0, 0.5}}) {
    const Vector psi = coherent_state(hd, PhasePoint(q, p)).amplitudes();
    const Vector mom = f.adjoint() * psi;
    std::vector<double> pq(n), pp(n);
    for (int j = 0; j < n; ++j) {
      pq[j] = std::norm(psi(j));
      pp[j] = std::norm(mom(j));
    }
    worst = std::max(worst, std::abs(wrapped_variance(pq) / wrapped_variance(pp) - 1.0));
  }
  return worst;
}

// ---- otoc ----

double otoc_vector_vs_dense(const Ctx&) {
  const int n = 8;
  double worst = 0.0;
  for (const auto& spec : scenario_specs(n)) {
    const FloquetPropagator u = FloquetPropagator::build(spec);
    const StateVector psi = initial_state(n);
    const DensityMatrix rho = density_of(psi);
    for (OperatorB b : {OperatorB::p2d, OperatorB::initial_density}) {
      OtocConfig cfg;
      cfg.operator_b = b;
      for (int t = 0; t <= 10; ++t) {
        const auto v = otoc_full(cfg, rho, u, t, OtocPath::vector);
        const auto d = otoc_full(cfg, rho, u, t, OtocPath::dense);
        worst = std::max({worst, std::abs(v.c - d.c), std::abs(v.c2 - d.c2), std::abs(v.c4_real - d.c4_real),
                          std::abs(v.c4_imag - d.c4_imag)});
      }
    }
  }
  return worst;
}

double eq5_split(const Ctx& c) {
  const int n = 8;
  Rng rng(41);
  double worst = 0.0;
  const auto spec = scenario_specs(n)[2];
  const FloquetPropagator u = FloquetPropagator::build(spec);
  const DensityMatrix rho = density_of(initial_state(n));
  const int pairs = c.full ? 50 : 10;
  for (Averaging avg : {Averaging::state_expectation, Averaging::normalized_trace}) {
    OtocConfig xp;
    xp.average = avg;
    for (int t = 0; t <= 10; ++t) worst = std::max(worst, otoc_full(xp, rho, u, t).split_residual());
    for (int s = 0; s < pairs; ++s) {
      OtocConfig cfg;
      cfg.average = avg;
      cfg.operator_a = OperatorA::custom;
      cfg.operator_b = OperatorB::custom;
      cfg.custom_a = Observable::dense(ComplexOperator(random_hermitian(u.dim(), rng), OpProperty::hermitian));
      cfg.custom_b = Observable::dense(ComplexOperator(random_hermitian(u.dim(), rng), OpProperty::hermitian));
      const int t = s % 11;
      worst = std::max(worst, otoc_full(cfg, rho, u, t).split_residual());
    }
  }
  return worst;
}

double otoc_re(const Ctx&) {
  const int n = 8;
  double worst = 0.0;
  for (const auto& spec : scenario_specs(n)) {
    const FloquetPropagator u = FloquetPropagator::build(spec);
    const StateVector psi = initial_state(n, 0.3, 0.6);
    for (int t : {0, 1, 2, 4, 8}) {
      const StateVector pt(u.apply(psi.amplitudes(), t), 1e-10);
      const DensityMatrix r1 = partial_trace_pure(pt, spec.dims(), Subsystem::first);
      const double sum = otoc_re_sum(psi, u, t);
      worst = std::max({worst, std::abs(sum - purity(r1)), std::abs(sum - std::exp(-renyi2(r1)))});
    }
  }
  return worst;
}

double zero_coupling(const Ctx&) {
  const int n = 8;
  double worst = 0.0;
  for (const auto& spec : scenario_specs(n, 0.0)) {
    const FloquetPropagator u = FloquetPropagator::build(spec);
    const StateVector psi = initial_state(n, 0.3, 0.6);
    for (int t = 0; t <= 10; ++t) worst = std::max(worst, std::abs(otoc_re_sum(psi, u, t) - 1.0));
  }
  return worst;
}

// ---- entropy ----

struct EntropyResiduals {
  double symmetry_vn = 0.0, symmetry_linear = 0.0, renyi_order = 0.0, purity_identity = 0.0;
};

EntropyResiduals entropy_identities(const Ctx& c) {
  const int n = c.full ? 64 : 8;
  EntropyResiduals r;
  for (const auto& spec : scenario_specs(n)) {
    const FloquetPropagator u = FloquetPropagator::build(spec);
    Vector v = initial_state(n, 0.3, 0.6).amplitudes();
    for (int t = 0; t <= 20; ++t) {
      if (t > 0) v = u.apply(v);
      const StateVector psi(v, 1e-10);
      const auto r1 = partial_trace_pure(psi, spec.dims(), Subsystem::first);
      const auto r2 = partial_trace_pure(psi, spec.dims(), Subsystem::second);
      const auto e1 = entropy_sample(t, r1), e2 = entropy_sample(t, r2);
      r.symmetry_vn = std::max(r.symmetry_vn, std::abs(e1.s_vn - e2.s_vn));
      r.symmetry_linear = std::max(r.symmetry_linear, std::abs(e1.s_linear - e2.s_linear));
      r.renyi_order = std::max({r.renyi_order, e1.s_renyi2 - e1.s_vn, e2.s_renyi2 - e2.s_vn});
      r.purity_identity = std::max({r.purity_identity, std::abs(std::exp(-e1.s_renyi2) - e1.purity),
                                    std::abs(std::exp(-e2.s_renyi2) - e2.purity)});
    }
  }
  return r;
}

// sample mean of Tr rho1^2 for Haar states on C^n (x) C^n, in standard errors
double rmt_haar(const Ctx&) {
  Rng rng(51);
  double worst = 0.0;
  for (const auto& [n, samples] : {std::pair{8, 4000}, std::pair{16, 1000}}) {
    const Dims d{n, n};
    std::vector<double> pur(samples);
    for (auto& p : pur) p = purity(partial_trace_pure(random_state(d.total(), rng), d, Subsystem::first));
    const double mean = std::accumulate(pur.begin(), pur.end(), 0.0) / samples;
    double var = 0.0;
    for (double p : pur) var += (p - mean) * (p - mean);
    const double se = std::sqrt(var / (samples - 1) / samples);
    worst = std::max(worst, std::abs(mean - rmt_saturation(HilbertDim(n)).purity_sat) / se);
  }
  return worst;
}

// ---- wigner ----

double wigner_realness(const Ctx&) {
  Rng rng(61);
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    worst = std::max(worst, wigner_grid(random_density(8, 3, rng), HilbertDim(8)).max_imag_residue);
    worst = std::max(worst, wigner_grid(random_density(16, 4, rng), HilbertDim(4)).max_imag_residue);
  }
  return worst;
}

double wigner_marginals(const Ctx&) {
  Rng rng(62);
  double worst = 0.0;
  for (int n : {5, 8}) {
    const HilbertDim hd(n);
    const Matrix f = dft_matrix(hd).matrix();
    for (int s = 0; s < 10; ++s) {
      const StateVector psi = random_state(n, rng);
      const WignerGrid w = wigner_grid(density_of(psi), hd);
      const auto pq = position_marginal(w), pp = momentum_marginal(w);
      const Vector mom = f.adjoint() * psi.amplitudes();
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(pq[j] - std::norm(psi.amplitudes()(j))));
        worst = std::max(worst, std::abs(pp[j] - std::norm(mom(j))));
      }
    }
  }
  return worst;
}

double wigner_overlap(const Ctx&) {
  Rng rng(63);
  const int n = 8;
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const StateVector a = random_state(n, rng), b = random_state(n, rng);
    const double lhs = grid_inner_product(wigner_grid(density_of(a), HilbertDim(n)), wigner_grid(density_of(b), HilbertDim(n)));
    worst = std::max(worst, std::abs(lhs - std::norm(a.amplitudes().dot(b.amplitudes())) / n));
  }
  return worst;
}

double schmidt_parseval(const Ctx&) {
  Rng rng(64);
  double worst = 0.0;
  for (const Dims d : {Dims{2, 3}, Dims{4, 4}, Dims{8, 8}}) {
    for (int s = 0; s < 10; ++s) {
      const DensityMatrix rho = random_density(d.total(), 1 + s, rng);
      const SchmidtSpectrum sp = operator_schmidt(rho, d);
      double ss = 0.0;
      for (double x : sp.sigmas) ss += x * x;
      worst = std::max(worst, std::abs(ss - purity(rho)));
    }
  }
  return worst;
}

double wse_pure(const Ctx& c, bool fast_path) {
  double worst = 0.0;
  const std::vector<int> sizes = fast_path ? (c.full ? std::vector<int>{8, 16, 64} : std::vector<int>{8})
                                           : (c.full ? std::vector<int>{8, 16} : std::vector<int>{8});
  for (int n : sizes) {
    const auto spec = scenario_specs(n)[2];
    const FloquetPropagator u = FloquetPropagator::build(spec);
    Vector v = initial_state(n, 0.3, 0.6).amplitudes();
    for (int t = 0; t <= 6; ++t) {
      if (t > 0) v = u.apply(v);
      const StateVector psi(v, 1e-10);
      const double svn = von_neumann(partial_trace_pure(psi, spec.dims(), Subsystem::first));
      const double h = fast_path ? wse_pure_fast(psi, spec.dims()) : wse(operator_schmidt(density_of(psi), spec.dims()));
      worst = std::max(worst, std::abs(h - 2.0 * svn));
    }
  }
  return worst;
}

double wigner_schmidt(const Ctx& c) {
  Rng rng(65);
  double worst = 0.0;
  for (int n : c.sizes({3, 4}, {3, 4, 8})) {
    const auto spec = scenario_specs(n)[2];
    const FloquetPropagator u = FloquetPropagator::build(spec);
    const StateVector psi(u.apply(initial_state(n, 0.3, 0.6).amplitudes(), 3), 1e-10);
    worst = std::max(worst, wigner_schmidt_crosscheck(density_of(psi), spec.dims()).max_deviation);
    worst = std::max(worst, wigner_schmidt_crosscheck(random_density(n * n, 3, rng), spec.dims()).max_deviation);
  }
  return worst;
}

// ---- classical ----

double area_preservation(const Ctx&) {
  Rng rng(71);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto spec = scenario_specs(8)[2];
  const double h = 1e-6;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const ClassicalPoint4D x{uni(rng), uni(rng), uni(rng), uni(rng)};
    const auto as_vec = [](const ClassicalPoint4D& p) { return Eigen::Vector4d(p.q1, p.p1, p.q2, p.p2); };
    Eigen::Matrix4d jac;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4d plus = as_vec(x), minus = as_vec(x);
      plus(k) += h;
      minus(k) -= h;
      const auto fp = as_vec(step_2d({plus(0), plus(1), plus(2), plus(3)}, spec));
      const auto fm = as_vec(step_2d({minus(0), minus(1), minus(2), minus(3)}, spec));
      Eigen::Vector4d diff = fp - fm;
      for (int i = 0; i < 4; ++i) diff(i) -= std::round(diff(i));  // undo mod-1 wrap
      jac.col(k) = diff / (2.0 * h);
    }
    worst = std::max(worst, std::abs(jac.determinant() - 1.0));
  }
  return worst;
}

double mod1_closure(const Ctx&) {
  Rng rng(72);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int bad = 0;
  const auto inside = [](double v) { return v >= 0.0 && v < 1.0; };
  for (const auto& spec : scenario_specs(8)) {
    ClassicalPoint4D x{uni(rng), uni(rng), uni(rng), uni(rng)};
    ClassicalPoint2D y{uni(rng), uni(rng)};
    for (int t = 0; t < 2000; ++t) {
      x = step_2d(x, spec);
      y = step_1d(y, spec.first);
      bad += !inside(x.q1) + !inside(x.p1) + !inside(x.q2) + !inside(x.p2) + !inside(y.q) + !inside(y.p);
    }
  }
  return bad;
}

double map_classification(const Ctx&) {
  using M = std::array<std::array<int, 2>, 2>;
  int bad = 0;
  for (const M& m : {M{{{2, 1}, {3, 2}}}, M{{{2, 1}, {1, 1}}}, M{{{0, 1}, {-1, 0}}}, M{{{1, 1}, {-1, 0}}},
                     M{{{0, -1}, {1, -1}}}, M{{{-2, 1}, {-3, 1}}}, M{{{-3, 1}, {-1, 0}}}}) {
    const MapSpec s{m, 0.25};
    const int disc = s.trace() * s.trace() - 4;
    bad += (s.kind() == MapKind::hyperbolic) != (disc > 0);
  }
  return bad;
}

double cse_permutation(const Ctx&) {
  Rng rng(73);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int g : {3, 4, 6}) {
    std::vector<ClassicalPoint4D> pts(5000);
    for (auto& p : pts) p = {uni(rng) * uni(rng), uni(rng), uni(rng), uni(rng) * uni(rng)};
    const CoarseDistribution d = coarse_distribution(pts, g);
    std::vector<int> rows(g * g), cols(g * g);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    CoarseDistribution e = d;
    for (int i = 0; i < g * g; ++i)
      for (int j = 0; j < g * g; ++j) e.weights(i, j) = d.weights(rows[i], cols[j]);
    worst = std::max(worst, std::abs(cse(d) - cse(e)));
  }
  return worst;
}

double lyapunov_reference(const Ctx&) {
  const auto l = lyapunov_estimate(MapSpec::hyperbolic(0.0), 10000, ClassicalPoint2D{0.1234, 0.5678});
  return std::abs(l[0] - std::log(2.0 + std::sqrt(3.0)));
}

// ---- harness ----

std::string figure_outputs_blob(const FigureSuiteResult& r) {
  std::ostringstream os;
  for (const auto& p : r.panels) {
    write_timeseries(os, p.records);
    write_metadata(os, p.metadata);
  }
  return os.str();
}

double determinism(const Ctx& c) {
  FigureSuiteOptions o;
  o.base.n = c.full ? 16 : 8;
  o.base.t_max = c.full ? 20 : 8;
  o.threads = 1;
  const std::string a = figure_outputs_blob(run_figure_suite(o));
  const std::string b = figure_outputs_blob(run_figure_suite(o));
  o.threads = 4;
  const std::string d = figure_outputs_blob(run_figure_suite(o));
  return (a == b ? 0.0 : 1.0) + (a == d ? 0.0 : 1.0);
}

double row_identities(const Ctx& c) {
  ScenarioConfig cfg;
  cfg.n = c.full ? 32 : 8;
  cfg.t_max = 15;
  int bad = 0;
  for (Dynamics dyn : {Dynamics::ee, Dynamics::he, Dynamics::hh}) {
    cfg.dynamics = dyn;
    for (const auto& r : run_scenario(cfg).records) bad += check_record(r).has_value();
  }
  return bad;
}

double config_echo(const Ctx&) {
  ScenarioConfig cfg;
  cfg.dynamics = Dynamics::he;
  cfg.n = 12;
  cfg.kc = 0.125;
  cfg.center1 = PhasePoint(0.25, 0.75);
  cfg.outputs.insert(OutputKind::schmidt_spectrum);
  const ScenarioConfig back = parse_config(echo_config(cfg));
  return echo_config(back) == echo_config(cfg) ? 0.0 : 1.0;
}

}  // namespace

VerifyReport verify(VerifyLevel level) {
  const Ctx c{level == VerifyLevel::full};
  VerifyReport report;
  report.level = level;
  auto run = [&](std::string name, double tol, const std::function<double()>& f, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.detail = std::move(detail);
    try {
      r.residual = f();
      r.passed = std::isfinite(r.residual) && r.residual <= tol;
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(r));
  };

  run("weyl_relation", 1e-12, [&] { return weyl_relation(c); });
  run("position_momentum_hermitian", 1e-12, [&] { return position_momentum_hermitian(c); });
  run("dft_unitary_equivalence", 1e-10, [&] { return dft_equivalence(c); }, "F^dagger P F = -X");
  run("partial_trace_trace_and_positivity", 1e-10, [&] { return partial_trace_health(c); }, "200 random states per dims");
  run("tensor_product_ordering", 1e-10, [&] { return tensor_ordering(c); });
  run("claimed_operator_properties", kClaimTolerance, [&] { return claimed_properties(c); });
  run("propagator_unitarity", 1e-8, [&] { return propagator_unitarity(c); }, "1-DOF and 2-DOF, three scenario specs");
  run("structured_equals_dense", 1e-10, [&] { return structured_vs_dense(c); }, "50 random targets per n");
  run("ehrenfest_liouville_window", 0.1, [&] { return ehrenfest_liouville(c, 3); },
      "<sin 2 pi q1> vs Gaussian ensemble, HH, 3 steps");
  run("global_phase_insensitivity", 1e-10, [&] { return global_phase(c); }, "phi = 0.7");
  run("coherent_translational_covariance", 1e-8, [&] { return translational_covariance(c); }, "1 - fidelity");
  run("coherent_uncertainty_balance", 0.1, [&] { return uncertainty_balance(c); }, "|var_q / var_p - 1|");
  run("otoc_vector_equals_dense", 1e-9, [&] { return otoc_vector_vs_dense(c); }, "n=8, t<=10");
  run("eq5_split_identity", kSplitTolerance, [&] { return eq5_split(c); }, "random hermitian pairs and X/P");
  run("otoc_re_identity", 1e-8, [&] { return otoc_re(c); }, "n=8, t in {0,1,2,4,8}");
  run("zero_coupling_factorization", 1e-9, [&] { return zero_coupling(c); });
  const EntropyResiduals er = entropy_identities(c);
  run("marginal_symmetry_vn", 1e-9, [&] { return er.symmetry_vn; });
  run("marginal_symmetry_linear", 1e-10, [&] { return er.symmetry_linear; });
  run("renyi_order", 1e-10, [&] { return std::max(0.0, er.renyi_order); }, "max(S2 - S_VN)");
  run("purity_renyi_identity", 1e-12, [&] { return er.purity_identity; });
  run("wigner_realness", kWignerImagTolerance, [&] { return wigner_realness(c); });
  run("wigner_marginals", 1e-8, [&] { return wigner_marginals(c); });
  run("wigner_overlap", 1e-8, [&] { return wigner_overlap(c); }, "sum W_a W_b = |<a|b>|^2 / n");
  run("schmidt_parseval", 1e-10, [&] { return schmidt_parseval(c); });
  run("wse_pure_state", 1e-9, [&] { return wse_pure(c, false); }, "|h - 2 S_VN|, dense operator-Schmidt path");
  run("wse_pure_state_fast_path", 1e-9, [&] { return wse_pure(c, true); }, c.full ? "includes n=64" : "n=8");
  run("wigner_schmidt_crosscheck", 1e-6, [&] { return wigner_schmidt(c); }, "relative to leading value");
  run("area_preservation", 1e-6, [&] { return area_preservation(c); }, "finite-difference Jacobian");
  run("mod1_closure", 0.0, [&] { return mod1_closure(c); }, "count of coordinates outside [0,1)");
  run("map_classification", 0.0, [&] { return map_classification(c); });
  run("cse_permutation_invariance", 1e-10, [&] { return cse_permutation(c); });
  run("lyapunov_reference", 1e-4, [&] { return lyapunov_reference(c); }, "ln(2 + sqrt 3), 1e4 steps");
  if (c.full) run("rmt_purity_haar_sampling", 5.0, [&] { return rmt_haar(c); }, "standard errors from 2n/(n^2+1)");
  run("row_identities", 0.0, [&] { return row_identities(c); }, "rows failing the writer checks");
  run("config_echo_roundtrip", 0.0, [&] { return config_echo(c); });
  run("determinism", 0.0, [&] { return determinism(c); }, "repeat and 1 vs 4 threads");
  return report;
}

void write_verify_report(std::ostream& os, const VerifyReport& report) {
  os << "invariant,status,residual,tolerance,detail\n";
  for (const auto& c : report.checks) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    os << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << format_double(c.residual) << ','
       << format_double(c.tolerance) << ',' << detail << '\n';
  }
}

}  // namespace catotoc::harness
