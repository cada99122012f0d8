#pragma once

// Classical coupled perturbed cat maps on the 4-torus.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "catotoc/catmap.hpp"

namespace catotoc {

struct ClassicalPoint2D {
  double q = 0.0;
  double p = 0.0;
};

struct ClassicalPoint4D {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
};

/// eps(q) = -(k / 2 pi) sin(2 pi q)
double kick(double k, double q);
/// kappa(q1, q2) = -(kc / 2 pi) sin(2 pi q1 + 2 pi q2)
double coupling_kick(double kc, double q1, double q2);

/// (q', p') = M (q, p + eps(q)) mod 1.
ClassicalPoint2D step_1d(ClassicalPoint2D x, const MapSpec& spec);

/// Each degree of freedom is kicked by eps(own q) + kappa(q1, q2), then mapped by its own M.
ClassicalPoint4D step_2d(const ClassicalPoint4D& x, const CoupledSpec& spec);

/// Analytic Jacobians of the two maps, coordinates ordered (q, p) and (q1, p1, q2, p2).
Eigen::Matrix2d jacobian_1d(ClassicalPoint2D x, const MapSpec& spec);
Eigen::Matrix4d jacobian_2d(const ClassicalPoint4D& x, const CoupledSpec& spec);

inline constexpr int kReorthonormalizeEvery = 10;
inline constexpr int kLyapunovBurnIn = 50;

/// Lyapunov spectrum (descending) from tangent-map products with QR
/// re-orthonormalization every kReorthonormalizeEvery steps. Needs steps >= 100.
std::array<double, 2> lyapunov_estimate(const MapSpec& spec, int steps, ClassicalPoint2D seed);
std::array<double, 4> lyapunov_estimate(const CoupledSpec& spec, int steps, const ClassicalPoint4D& seed);

std::vector<ClassicalPoint4D> evolve_ensemble(std::span<const ClassicalPoint4D> points, const CoupledSpec& spec,
                                              int t);

/// Histogram over g^4 cells arranged as g^2 x g^2: row = (q1, p1) cell, column = (q2, p2) cell.
struct CoarseDistribution {
  int g = 0;
  RealMatrix weights;
};

inline int cell_index(double x, int g) {
  const int i = static_cast<int>(x * g);
  return i < 0 ? 0 : (i >= g ? g - 1 : i);
}

CoarseDistribution coarse_distribution(std::span<const ClassicalPoint4D> points, int g);

/// Separability entropy of the subsystem-partitioned histogram:
/// -sum sigma~^2 ln sigma~^2 over its normalized singular values.
double cse(const CoarseDistribution& dist);

inline constexpr std::string_view kCseConstruction = "svd-entropy of (q1,p1)x(q2,p2) coarse histogram";

}  // namespace catotoc
