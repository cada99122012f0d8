#include "catotoc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "catotoc/states.hpp"

namespace catotoc {

double kick(double k, double q) { return -(k / kTwoPi) * std::sin(kTwoPi * q); }

double coupling_kick(double kc, double q1, double q2) { return -(kc / kTwoPi) * std::sin(kTwoPi * q1 + kTwoPi * q2); }

namespace {

ClassicalPoint2D apply_matrix(const MapSpec& spec, double q, double p) {
  return {wrap_unit(spec.m[0][0] * q + spec.m[0][1] * p), wrap_unit(spec.m[1][0] * q + spec.m[1][1] * p)};
}

}  // namespace

ClassicalPoint2D step_1d(ClassicalPoint2D x, const MapSpec& spec) {
  return apply_matrix(spec, x.q, x.p + kick(spec.k, x.q));
}

ClassicalPoint4D step_2d(const ClassicalPoint4D& x, const CoupledSpec& spec) {
  const double kappa = coupling_kick(spec.kc, x.q1, x.q2);
  const ClassicalPoint2D a = apply_matrix(spec.first, x.q1, x.p1 + kick(spec.first.k, x.q1) + kappa);
  const ClassicalPoint2D b = apply_matrix(spec.second, x.q2, x.p2 + kick(spec.second.k, x.q2) + kappa);
  return {a.q, a.p, b.q, b.p};
}

Eigen::Matrix2d jacobian_1d(ClassicalPoint2D x, const MapSpec& spec) {
  Eigen::Matrix2d m;
  m << spec.m[0][0], spec.m[0][1], spec.m[1][0], spec.m[1][1];
  Eigen::Matrix2d shear = Eigen::Matrix2d::Identity();
  shear(1, 0) = -spec.k * std::cos(kTwoPi * x.q);
  return m * shear;
}

Eigen::Matrix4d jacobian_2d(const ClassicalPoint4D& x, const CoupledSpec& spec) {
  const double dkappa = -spec.kc * std::cos(kTwoPi * (x.q1 + x.q2));
  // derivatives of the kicked momenta a_i = p_i + eps_i(q_i) + kappa(q1, q2)
  Eigen::Matrix4d shear = Eigen::Matrix4d::Identity();
  shear(1, 0) = -spec.first.k * std::cos(kTwoPi * x.q1) + dkappa;
  shear(1, 2) = dkappa;
  shear(3, 2) = -spec.second.k * std::cos(kTwoPi * x.q2) + dkappa;
  shear(3, 0) = dkappa;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<2, 2>(0, 0) << spec.first.m[0][0], spec.first.m[0][1], spec.first.m[1][0], spec.first.m[1][1];
  m.block<2, 2>(2, 2) << spec.second.m[0][0], spec.second.m[0][1], spec.second.m[1][0], spec.second.m[1][1];
  return m * shear;
}

namespace {

template <int D, typename Point, typename Spec, typename Step, typename Jac>
std::array<double, D> tangent_spectrum(const Spec& spec, int steps, Point x, Step step, Jac jac) {
  if (steps < 100) throw InvalidArgument("Lyapunov estimate needs at least 100 steps");
  using Mat = Eigen::Matrix<double, D, D>;
  Mat basis = Mat::Identity();
  Eigen::Matrix<double, D, 1> logs = Eigen::Matrix<double, D, 1>::Zero();
  auto reorthonormalize = [&](bool accumulate) {
    Eigen::HouseholderQR<Mat> qr(basis);
    const Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
    const Mat q = qr.householderQ();
    for (int i = 0; i < D; ++i) {
      const double rii = std::abs(r(i, i));
      if (!std::isfinite(rii) || rii == 0.0) throw NumericalHealthError("tangent vectors diverged or collapsed");
      if (accumulate) logs(i) += std::log(rii);
    }
    basis = q;
  };
  for (int s = 0; s < kLyapunovBurnIn; ++s) {
    basis = jac(x, spec) * basis;
    x = step(x, spec);
    if ((s + 1) % kReorthonormalizeEvery == 0) reorthonormalize(false);
  }
  reorthonormalize(false);
  for (int s = 0; s < steps; ++s) {
    basis = jac(x, spec) * basis;
    x = step(x, spec);
    if ((s + 1) % kReorthonormalizeEvery == 0 || s + 1 == steps) reorthonormalize(true);
  }
  std::array<double, D> out{};
  for (int i = 0; i < D; ++i) out[i] = logs(i) / steps;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::array<double, 2> lyapunov_estimate(const MapSpec& spec, int steps, ClassicalPoint2D seed) {
  spec.validate();
  return tangent_spectrum<2>(spec, steps, seed, step_1d, jacobian_1d);
}

std::array<double, 4> lyapunov_estimate(const CoupledSpec& spec, int steps, const ClassicalPoint4D& seed) {
  spec.validate();
  return tangent_spectrum<4>(spec, steps, seed, step_2d, jacobian_2d);
}

std::vector<ClassicalPoint4D> evolve_ensemble(std::span<const ClassicalPoint4D> points, const CoupledSpec& spec,
                                              int t) {
  if (t < 0) throw InvalidArgument("time must be nonnegative");
  std::vector<ClassicalPoint4D> out(points.begin(), points.end());
  for (auto& x : out)
    for (int s = 0; s < t; ++s) x = step_2d(x, spec);
  return out;
}

CoarseDistribution coarse_distribution(std::span<const ClassicalPoint4D> points, int g) {
  if (g < 2) throw InvalidArgument("coarse grid needs g >= 2");
  if (points.empty()) throw InvalidArgument("cannot build a distribution from zero points");
  CoarseDistribution d{g, RealMatrix::Zero(g * g, g * g)};
  for (const auto& x : points) {
    const int row = cell_index(x.q1, g) * g + cell_index(x.p1, g);
    const int col = cell_index(x.q2, g) * g + cell_index(x.p2, g);
    d.weights(row, col) += 1.0;
  }
  d.weights /= static_cast<double>(points.size());
  return d;
}

double cse(const CoarseDistribution& dist) {
  Eigen::BDCSVD<RealMatrix> svd(dist.weights);
  const RealVector s = svd.singularValues();
  const double norm = s.norm();
  if (!(norm > 0.0)) throw InvalidArgument("all-zero coarse distribution");
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double sn = s(i) / norm;
    if (sn < 1e-14) continue;
    h -= sn * sn * std::log(sn * sn);
  }
  return h;
}

}  // namespace catotoc
