#include "doctest.h"

#include "catotoc/random.hpp"
#include "catotoc/torus_hilbert.hpp"
#include "oracles.hpp"

using namespace catotoc;

TEST_SUITE("torus_hilbert") {

TEST_CASE("hilbert dimension rejects n below 2") {
  CHECK_THROWS_AS(HilbertDim(1), InvalidArgument);
  CHECK_THROWS_AS(HilbertDim(0), InvalidArgument);
  CHECK(HilbertDim(8).hbar() == doctest::Approx(1.0 / (2.0 * oracle::pi * 8)));
}

TEST_CASE("shift operator") {
  const Matrix v2 = shift_operator(HilbertDim(2)).matrix();
  CHECK(v2(0, 0) == cplx(0));
  CHECK(v2(0, 1) == cplx(1));
  CHECK(v2(1, 0) == cplx(1));
  CHECK(v2(1, 1) == cplx(0));

  const Matrix v5 = shift_operator(HilbertDim(5)).matrix();
  Matrix p = Matrix::Identity(5, 5);
  for (int i = 0; i < 5; ++i) p = v5 * p;
  CHECK(oracle::max_abs(p - Matrix::Identity(5, 5)) < 1e-15);

  const Matrix v7 = shift_operator(HilbertDim(7)).matrix();
  CHECK(oracle::max_abs(v7.adjoint() * v7 - Matrix::Identity(7, 7)) < 1e-15);
  // V|q> = |q+1>
  CHECK(std::abs(v7(3, 2) - 1.0) < 1e-15);
}

TEST_CASE("clock operator") {
  const Matrix u2 = clock_operator(HilbertDim(2)).matrix();
  CHECK(std::abs(u2(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(u2(1, 1) + 1.0) < 1e-15);
  const Matrix u4 = clock_operator(HilbertDim(4)).matrix();
  const cplx expect[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(u4(j, j) - expect[j]) < 1e-15);

  // explicit 4x4 products, element by element
  const Matrix v4 = shift_operator(HilbertDim(4)).matrix();
  const cplx w = std::exp(cplx(0, oracle::pi / 2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx uv = 0, vu = 0;
      for (int k = 0; k < 4; ++k) {
        uv += u4(i, k) * v4(k, j);
        vu += v4(i, k) * u4(k, j);
      }
      CHECK(std::abs(uv - w * vu) < 1e-14);
    }
}

TEST_CASE("weyl relation for n = 2..64") {
  for (int n = 2; n <= 64; ++n) {
    const Matrix u = clock_operator(HilbertDim(n)).matrix(), v = shift_operator(HilbertDim(n)).matrix();
    CHECK(oracle::max_abs(u * v - std::exp(cplx(0, 2 * oracle::pi / n)) * v * u) < 1e-12);
  }
}

TEST_CASE("position operator") {
  const Matrix x4 = position_operator(HilbertDim(4)).matrix();
  const double expect[] = {0, 1, 0, -1};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(x4(j, j) - expect[j]) < 1e-15);
  CHECK(position_operator(HilbertDim(16)).hermiticity_residual() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(position_operator(HilbertDim(64)).matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1.0 - 1e-14);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-14);
}

TEST_CASE("momentum operator") {
  CHECK(oracle::max_abs(momentum_operator(HilbertDim(2)).matrix()) < 1e-15);

  // diagonalize through an explicit DFT written out here
  const int n = 4;
  Matrix f(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = std::exp(cplx(0, 2 * oracle::pi * j * k / n)) / 2.0;
  const Matrix d = f.adjoint() * momentum_operator(HilbertDim(n)).matrix() * f;
  std::vector<double> eig;
  for (int k = 0; k < n; ++k) eig.push_back(d(k, k).real());
  std::sort(eig.begin(), eig.end());
  const double expect[] = {-1, 0, 0, 1};
  for (int k = 0; k < n; ++k) CHECK(eig[k] == doctest::Approx(expect[k]).epsilon(1e-12));
  CHECK(oracle::max_abs(d - Matrix(d.diagonal().asDiagonal())) < 1e-12);

  const Matrix x8 = position_operator(HilbertDim(8)).matrix(), p8 = momentum_operator(HilbertDim(8)).matrix();
  CHECK((x8 * p8 - p8 * x8).norm() > 0.1);
}

TEST_CASE("position and momentum are unitarily equivalent under the DFT") {
  for (int n : {3, 8, 17, 64}) {
    const HilbertDim hd(n);
    const Matrix f = dft_matrix(hd).matrix();
    CHECK(oracle::max_abs(f.adjoint() * momentum_operator(hd).matrix() * f + position_operator(hd).matrix()) < 1e-10);
    CHECK(momentum_operator(hd).hermiticity_residual() < 1e-12);
  }
}

TEST_CASE("dft matrix") {
  const Matrix f2 = dft_matrix(HilbertDim(2)).matrix();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f2(0, 0) - s) < 1e-15);
  CHECK(std::abs(f2(0, 1) - s) < 1e-15);
  CHECK(std::abs(f2(1, 0) - s) < 1e-15);
  CHECK(std::abs(f2(1, 1) + s) < 1e-15);
  const Matrix f8 = dft_matrix(HilbertDim(8)).matrix();
  CHECK(oracle::max_abs(f8 * f8.adjoint() - Matrix::Identity(8, 8)) < 1e-14);

  // columns are eigenvectors of V with eigenvalue exp(-2 pi i k / n)
  const Matrix f4 = dft_matrix(HilbertDim(4)).matrix(), v4 = shift_operator(HilbertDim(4)).matrix();
  for (int k = 0; k < 4; ++k) {
    const Vector col = f4.col(k);
    const Vector lhs = v4 * col;
    CHECK((lhs - std::exp(cplx(0, -2 * oracle::pi * k / 4)) * col).norm() < 1e-14);
  }
}

TEST_CASE("tensor product") {
  const Matrix i4 = tensor_product(identity_operator(2), identity_operator(2)).matrix();
  CHECK(oracle::max_abs(i4 - Matrix::Identity(4, 4)) == 0.0);

  const ComplexOperator x2 = position_operator(HilbertDim(4));
  const Matrix xx = tensor_product(x2, x2).matrix();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(std::abs(xx(a * 4 + b, a * 4 + b) - x2.matrix()(a, a) * x2.matrix()(b, b)) < 1e-15);
  CHECK(oracle::max_abs(xx - Matrix(xx.diagonal().asDiagonal())) == 0.0);

  Rng rng(1);
  const Matrix a = random_unitary(3, rng), b = random_unitary(3, rng), c = random_unitary(3, rng), d = random_unitary(3, rng);
  const Matrix lhs = tensor_product(ComplexOperator(a), ComplexOperator(b)).matrix() *
                     tensor_product(ComplexOperator(c), ComplexOperator(d)).matrix();
  CHECK(oracle::max_abs(lhs - oracle::kron(a * c, b * d)) < 1e-12);
  CHECK(oracle::max_abs(tensor_product(ComplexOperator(a), ComplexOperator(b)).matrix() - oracle::kron(a, b)) < 1e-15);

  CHECK_THROWS_AS(tensor_product(identity_operator(64), identity_operator(128), 4096), BudgetExceeded);
}

TEST_CASE("partial trace examples") {
  const int n = 3;
  Vector psi = Vector::Zero(n * n);
  psi(0 * n + 1) = 1.0;  // |0> (x) |1>
  const DensityMatrix rho(psi * psi.adjoint());
  const Matrix r1 = partial_trace(rho, {n, n}, Subsystem::first).matrix();
  Matrix e00 = Matrix::Zero(n, n);
  e00(0, 0) = 1.0;
  CHECK(oracle::max_abs(r1 - e00) < 1e-15);

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix b(bell * bell.adjoint());
  for (Subsystem s : {Subsystem::first, Subsystem::second}) {
    CHECK(oracle::max_abs(partial_trace(b, {2, 2}, s).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
    CHECK(oracle::max_abs(partial_trace_pure(StateVector(bell), {2, 2}, s).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
  }

  Vector z = Vector::Zero(16);
  z(0) = 1.0;
  const Matrix r = partial_trace_pure(StateVector(z), {4, 4}, Subsystem::first).matrix();
  CHECK(r.trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("partial trace agrees with the brute-force oracle") {
  Rng rng(2);
  for (const Dims d : {Dims{2, 3}, Dims{3, 2}, Dims{3, 3}, Dims{4, 4}}) {
    const DensityMatrix rho = random_density(d.total(), 3, rng);
    CHECK(oracle::max_abs(partial_trace(rho, d, Subsystem::first).matrix() -
                          oracle::partial_trace(rho.matrix(), d.first, d.second, 1)) < 1e-14);
    CHECK(oracle::max_abs(partial_trace(rho, d, Subsystem::second).matrix() -
                          oracle::partial_trace(rho.matrix(), d.first, d.second, 2)) < 1e-14);
  }
}

TEST_CASE("marginal spectra of a random pure state coincide") {
  Rng rng(3);
  const StateVector psi = random_state(9, rng);
  const Matrix r1 = oracle::partial_trace(psi.amplitudes() * psi.amplitudes().adjoint(), 3, 3, 1);
  const Matrix r2 = oracle::partial_trace(psi.amplitudes() * psi.amplitudes().adjoint(), 3, 3, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> e1(r1), e2(r2);
  CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  const auto l1 = partial_trace(DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint()), {3, 3}, Subsystem::first).eigenvalues();
  CHECK((l1 - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure-state partial trace agrees with the dense path") {
  Rng rng(4);
  for (int s = 0; s < 5; ++s) {
    const StateVector psi = random_state(16, rng);
    const DensityMatrix rho(psi.amplitudes() * psi.amplitudes().adjoint());
    for (Subsystem k : {Subsystem::first, Subsystem::second})
      CHECK(oracle::max_abs(partial_trace_pure(psi, {4, 4}, k).matrix() - partial_trace(rho, {4, 4}, k).matrix()) < 1e-12);
  }
}

TEST_CASE("partial trace preserves trace and positivity on random states") {
  Rng rng(5);
  for (const Dims d : {Dims{2, 2}, Dims{2, 4}, Dims{3, 3}}) {
    for (int s = 0; s < 200; ++s) {
      const DensityMatrix rho = random_density(d.total(), 1 + s % d.total(), rng);
      for (Subsystem k : {Subsystem::first, Subsystem::second}) {
        const DensityMatrix r = partial_trace(rho, d, k);
        REQUIRE(std::abs(r.matrix().trace().real() - 1.0) < 1e-12);
        REQUIRE(r.eigenvalues()(0) >= -1e-10);
      }
    }
  }
}

TEST_CASE("tensor ordering: first factor survives keep = first") {
  Rng rng(6);
  const DensityMatrix r1 = random_density(3, 3, rng), r2 = random_density(4, 4, rng);
  const Matrix a = random_hermitian(3, rng);
  const Matrix prod = oracle::kron(r1.matrix(), r2.matrix());
  const Matrix lhs = tensor_product(ComplexOperator(a), identity_operator(4)).matrix() * prod;
  CHECK(oracle::max_abs(oracle::partial_trace(lhs, 3, 4, 1) - a * r1.matrix()) < 1e-10);
  CHECK(oracle::max_abs(partial_trace(DensityMatrix(prod), {3, 4}, Subsystem::first).matrix() - r1.matrix()) < 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
  Rng rng(7);
  const DensityMatrix rho = random_density(6, 2, rng);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, Subsystem::first), DimensionMismatch);
  CHECK_THROWS_AS(partial_trace_pure(random_state(6, rng), {4, 2}, Subsystem::first), DimensionMismatch);
}

TEST_CASE("value types validate their invariants") {
  Vector v = Vector::Zero(3);
  v(0) = 1.1;
  CHECK_THROWS_AS(StateVector{v}, InvalidArgument);
  CHECK(StateVector::normalized(v).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));

  Matrix m = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);  // trace 2
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, InvalidArgument);
  CHECK_NOTHROW(DensityMatrix{neg, Validation::structural});
  Matrix nh(2, 2);
  nh << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{nh}, InvalidArgument);

  const ComplexOperator bogus(Matrix::Ones(2, 2), OpProperty::unitary);
  CHECK_THROWS_AS(bogus.verify_claims(), NumericalHealthError);
  CHECK_NOTHROW(shift_operator(HilbertDim(6)).verify_claims());
}

}  // TEST_SUITE
