#include "catotoc/states.hpp"

#include <cmath>

namespace catotoc {

double wrap_unit(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("phase-space coordinate must be finite");
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

PhasePoint::PhasePoint(double q, double p) : q_(wrap_unit(q)), p_(wrap_unit(p)) {}

int coherent_state_images(HilbertDim n) {
  // exp(-pi n m^2) for the first dropped image stays below 1e-12 with m >= 3
  // once n >= 8; small n need a wider window.
  return n.value() >= 8 ? 3 : 3 + (8 - n.value());
}

StateVector coherent_state(HilbertDim hd, PhasePoint center) {
  const int n = hd.value();
  const int images = coherent_state_images(hd);
  const double q0 = center.q(), p0 = center.p();
  Vector psi = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    for (int m = -images; m <= images; ++m) {
      const double dq = x - q0 - m;
      psi(j) += std::polar(std::exp(-kPi * n * dq * dq), kTwoPi * n * p0 * (x - m));
    }
  }
  return StateVector::normalized(std::move(psi));
}

StateVector product_state(const StateVector& psi1, const StateVector& psi2) {
  const int n1 = psi1.dim(), n2 = psi2.dim();
  Vector out(n1 * n2);
  for (int j1 = 0; j1 < n1; ++j1) out.segment(j1 * n2, n2) = psi1.amplitudes()(j1) * psi2.amplitudes();
  return StateVector(std::move(out), 1e-12);
}

DensityMatrix density_of(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint(), Validation::structural);
}

StateVector basis_state(int dim, int j) {
  if (j < 0 || j >= dim) throw InvalidArgument("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(j) = 1.0;
  return StateVector(std::move(v));
}

}  // namespace catotoc
