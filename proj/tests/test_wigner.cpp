#include "doctest.h"

#include "catotoc/catmap.hpp"
#include "catotoc/entropy.hpp"
#include "catotoc/random.hpp"
#include "catotoc/states.hpp"
#include "catotoc/wigner.hpp"
#include "oracles.hpp"

using namespace catotoc;

namespace {

StateVector bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return StateVector(v);
}

// closed-form lattice sum, evaluated point by point
double wigner_oracle(const Matrix& rho, int n, int q, int p) {
  const double pi = oracle::pi;
  cplx acc = 0;
  for (int a = 0; a < n; ++a) {
    const int row = ((q - a) % n + n) % n;
    acc += rho(row, a) * std::exp(cplx(0, pi * (2.0 * a - q) * p / n));
  }
  return (acc / (2.0 * n)).real();
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("operator Schmidt spectrum of a product is rank one") {
  Rng rng(40);
  const DensityMatrix r1 = random_density(3, 2, rng), r2 = random_density(4, 3, rng);
  const SchmidtSpectrum s = operator_schmidt(DensityMatrix(oracle::kron(r1.matrix(), r2.matrix())), {3, 4});
  CHECK(s.sigmas[0] > 0.1);
  for (std::size_t i = 1; i < s.sigmas.size(); ++i) CHECK(s.sigmas[i] < 1e-12);
  CHECK(wse(s) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("operator Schmidt spectrum of a Bell state") {
  const SchmidtSpectrum s = operator_schmidt(density_of(bell()), {2, 2});
  REQUIRE(s.sigmas.size() == 4);
  // four equal values; Parseval fixes them to 1/2
  for (double x : s.sigmas) CHECK(x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wse(s) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("Parseval for operator Schmidt") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(9, 1 + i % 9, rng);
    const SchmidtSpectrum s = operator_schmidt(rho, {3, 3});
    double ss = 0;
    for (double x : s.sigmas) ss += x * x;
    CHECK(std::abs(ss - purity(rho)) < 1e-10);
    CHECK(std::abs(s.norm * s.norm - ss) < 1e-12);
  }
  CHECK_THROWS_AS(operator_schmidt(random_density(9, 2, rng), {2, 4}), DimensionMismatch);
}

TEST_CASE("wse of simple spectra") {
  CHECK(wse(SchmidtSpectrum{{0.7}, 0.7}) == 0.0);
  for (int k : {2, 3, 7}) {
    SchmidtSpectrum s{std::vector<double>(k, 0.3), 0.3 * std::sqrt(double(k))};
    CHECK(wse(s) == doctest::Approx(std::log(double(k))).epsilon(1e-12));
  }
  CHECK_THROWS(wse(SchmidtSpectrum{{0.0, 0.0}, 0.0}));
}

TEST_CASE("pure states: wse is twice the entanglement entropy") {
  Rng rng(42);
  for (int i = 0; i < 5; ++i) {
    const StateVector psi = random_state(64, rng);
    const double svn = von_neumann(partial_trace_pure(psi, {8, 8}, Subsystem::first));
    const double h = wse(operator_schmidt(density_of(psi), {8, 8}));
    CHECK(std::abs(h - 2.0 * svn) <= 1e-9);
  }
}

TEST_CASE("fast pure-state path") {
  const StateVector prod = product_state(coherent_state(HilbertDim(8), PhasePoint(0.2, 0.3)),
                                         coherent_state(HilbertDim(8), PhasePoint(0.5, 0.5)));
  CHECK(std::abs(wse_pure_fast(prod, {8, 8})) < 1e-10);
  CHECK(wse_pure_fast(bell(), {2, 2}) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(wse(operator_schmidt(density_of(bell()), {2, 2})) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    const StateVector psi = random_state(64, rng);
    CHECK(std::abs(wse_pure_fast(psi, {8, 8}) - wse(operator_schmidt(density_of(psi), {8, 8}))) <= 1e-9);
  }
  // n = 64 only has the fast path
  const StateVector big = random_state(64 * 64, rng);
  CHECK(std::abs(wse_pure_fast(big, {64, 64}) - 2.0 * von_neumann(partial_trace_pure(big, {64, 64}, Subsystem::first))) <=
        1e-9);
}

TEST_CASE("one-mode grid matches the closed form and is real") {
  Rng rng(44);
  for (int n : {3, 4, 7}) {
    const DensityMatrix rho = random_density(n, 2, rng);
    const WignerGrid w = wigner_grid(rho, HilbertDim(n));
    CHECK(w.side() == 2 * n);
    CHECK(w.max_imag_residue <= kWignerImagTolerance);
    for (int q = 0; q < 2 * n; ++q)
      for (int p = 0; p < 2 * n; ++p) CHECK(std::abs(w.at(q, p) - wigner_oracle(rho.matrix(), n, q, p)) < 1e-14);
  }
}

TEST_CASE("marginals") {
  const WignerGrid w0 = wigner_grid(density_of(basis_state(4, 0)), HilbertDim(4));
  const auto pq = position_marginal(w0);
  CHECK(pq[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int j = 1; j < 4; ++j) CHECK(std::abs(pq[j]) < 1e-12);
  // the weight sits on the q = 0 column and its ghost at q = n
  double col0 = 0, rest = 0;
  for (int q = 0; q < 8; ++q)
    for (int p = 0; p < 8; ++p) (q % 4 == 0 ? col0 : rest) += std::abs(w0.at(q, p));
  CHECK(col0 > 0.0);
  CHECK(rest < 1e-12);

  Rng rng(45);
  const int n = 8;
  Matrix f(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = std::exp(cplx(0, 2 * oracle::pi * j * k / n)) / std::sqrt(double(n));
  for (int i = 0; i < 10; ++i) {
    const StateVector psi = random_state(n, rng);
    const WignerGrid w = wigner_grid(density_of(psi), HilbertDim(n));
    const auto mq = position_marginal(w), mp = momentum_marginal(w);
    const Vector mom = f.adjoint() * psi.amplitudes();
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(mq[j] - std::norm(psi.amplitudes()(j))) < 1e-8);
      CHECK(std::abs(mp[j] - std::norm(mom(j))) < 1e-8);
    }
  }
}

TEST_CASE("maximally mixed state is flat on each sublattice") {
  const int n = 6;
  const WignerGrid w = wigner_grid(DensityMatrix(Matrix::Identity(n, n) / double(n)), HilbertDim(n));
  for (int q = 0; q < 2 * n; ++q)
    for (int p = 0; p < 2 * n; ++p) {
      CHECK(std::abs(w.at(q, p) - w.at((q + 2) % (2 * n), p)) < 1e-14);
      CHECK(std::abs(w.at(q, p) - w.at(q, (p + 2) % (2 * n))) < 1e-14);
    }
}

TEST_CASE("coherent state peaks at its center") {
  for (int n : {7, 8}) {
    const WignerGrid w = wigner_grid(density_of(coherent_state(HilbertDim(n), PhasePoint(0.5, 0.5))), HilbertDim(n));
    double mx = -1;
    for (double v : w.values) mx = std::max(mx, v);
    // lattice point (q/2n, p/2n) = (0.5, 0.5); even n has exact ghost copies, so ties are allowed
    CHECK(w.at(n, n) >= mx - 1e-12);
  }
}

TEST_CASE("overlap formula") {
  Rng rng(46);
  const int n = 8;
  for (int i = 0; i < 20; ++i) {
    const StateVector a = random_state(n, rng), b = random_state(n, rng);
    const double g = grid_inner_product(wigner_grid(density_of(a), HilbertDim(n)), wigner_grid(density_of(b), HilbertDim(n)));
    CHECK(std::abs(g - std::norm(a.amplitudes().dot(b.amplitudes())) / n) < 1e-8);
  }
}

TEST_CASE("two-mode grid and budget") {
  Rng rng(47);
  const DensityMatrix rho = random_density(9, 3, rng);
  const WignerGrid w = wigner_grid(rho, HilbertDim(3));
  CHECK(w.dofs == 2);
  CHECK(w.values.size() == 6u * 6 * 6 * 6);
  CHECK(w.max_imag_residue <= kWignerImagTolerance);
  CHECK_THROWS_AS(wigner_grid(random_density(81, 1, rng), HilbertDim(9)), BudgetExceeded);
  CHECK_THROWS_AS(wigner_grid(rho, HilbertDim(4)), DimensionMismatch);
  WignerBudget tight;
  tight.max_n_one_mode = 4;
  CHECK_THROWS_AS(wigner_grid(random_density(5, 1, rng), HilbertDim(5), tight), BudgetExceeded);
}

TEST_CASE("grid singular spectrum matches the operator-Schmidt spectrum") {
  const StateVector prod = product_state(coherent_state(HilbertDim(4), PhasePoint(0.3, 0.2)),
                                         coherent_state(HilbertDim(4), PhasePoint(0.5, 0.5)));
  const auto rep = wigner_schmidt_crosscheck(density_of(prod), {4, 4});
  CHECK(rep.grid_spectrum[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.operator_spectrum[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.grid_spectrum[1] < 1e-6);

  const CoupledSpec hh{MapSpec::hyperbolic(), MapSpec::hyperbolic(), 0.5, HilbertDim(8)};
  const FloquetPropagator u = FloquetPropagator::build(hh);
  const auto z = coherent_state(HilbertDim(8), PhasePoint(0.5, 0.5));
  const StateVector psi3(u.apply(product_state(z, z).amplitudes(), 3), 1e-10);
  CHECK(wigner_schmidt_crosscheck(density_of(psi3), {8, 8}).max_deviation <= 1e-6);

  Rng rng(48);
  CHECK(wigner_schmidt_crosscheck(density_of(random_state(16, rng)), {4, 4}).max_deviation <= 1e-6);
  CHECK(wigner_schmidt_crosscheck(random_density(16, 3, rng), {4, 4}).max_deviation <= 1e-6);
}

}  // TEST_SUITE
