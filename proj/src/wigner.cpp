#include "catotoc/wigner.hpp"

#include <algorithm>
#include <cmath>

namespace catotoc {

namespace {

std::vector<double> singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::vector<double> singular_values(const RealMatrix& m) {
  Eigen::BDCSVD<RealMatrix> svd(m);
  const RealVector s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double squared_spectrum_entropy(const std::vector<double>& normalized_sigmas) {
  double h = 0.0;
  for (double s : normalized_sigmas) {
    if (s < kSchmidtFloor) continue;
    const double w = s * s;
    h -= w * std::log(w);
  }
  return h;
}

// exp(i pi k p / n) for k, p in [0, 2n)
Matrix reflection_phases(int n) {
  const int side = 2 * n;
  Matrix ph(side, side);
  for (int k = 0; k < side; ++k)
    for (int p = 0; p < side; ++p) ph(k, p) = std::polar(1.0, kPi * static_cast<double>((k * p) % side) / n);
  return ph;
}

inline int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

std::vector<double> SchmidtSpectrum::normalized() const {
  if (!(norm > 0.0)) throw InvalidArgument("Schmidt spectrum is identically zero");
  std::vector<double> out(sigmas);
  for (double& s : out) s /= norm;
  return out;
}

SchmidtSpectrum operator_schmidt(const DensityMatrix& rho, Dims dims) {
  if (dims.first < 1 || dims.second < 1 || dims.total() != rho.dim())
    throw DimensionMismatch("operator_schmidt: dimension does not factor");
  const int n1 = dims.first, n2 = dims.second;
  const Matrix& r = rho.matrix();
  Matrix shuffled(n1 * n1, n2 * n2);
  for (int j1 = 0; j1 < n1; ++j1)
    for (int k1 = 0; k1 < n1; ++k1)
      for (int j2 = 0; j2 < n2; ++j2)
        for (int k2 = 0; k2 < n2; ++k2) shuffled(j1 * n1 + k1, j2 * n2 + k2) = r(j1 * n2 + j2, k1 * n2 + k2);
  SchmidtSpectrum out;
  out.sigmas = singular_values(shuffled);
  double sq = 0.0;
  for (double s : out.sigmas) sq += s * s;
  out.norm = std::sqrt(sq);
  return out;
}

double wse(const SchmidtSpectrum& spectrum) { return squared_spectrum_entropy(spectrum.normalized()); }

std::vector<double> state_schmidt_coefficients(const StateVector& psi, Dims dims) {
  return singular_values(amplitude_matrix(psi.amplitudes(), dims));
}

double wse_pure_fast(const StateVector& psi, Dims dims) {
  const std::vector<double> s = state_schmidt_coefficients(psi, dims);
  double norm_sq = 0.0;
  for (double x : s) norm_sq += x * x;
  // operator Schmidt values are s_i s_j with total weight (sum s^2)^2
  double h = 0.0;
  for (double si : s) {
    for (double sj : s) {
      const double w = si * si * sj * sj / (norm_sq * norm_sq);
      if (std::sqrt(w) < kSchmidtFloor) continue;
      h -= w * std::log(w);
    }
  }
  return h;
}

// ---- Wigner grids --------------------------------------------------------------

RealMatrix WignerGrid::as_matrix() const {
  if (dofs != 2) throw InvalidArgument("as_matrix needs a two-mode grid");
  const Eigen::Index s2 = static_cast<Eigen::Index>(side()) * side();
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(values.data(), s2,
                                                                                                  s2);
}

WignerGrid wigner_grid(const DensityMatrix& rho, HilbertDim hd, WignerBudget budget) {
  const int n = hd.value(), side = 2 * n;
  const Matrix& r = rho.matrix();
  const Matrix ph = reflection_phases(n);
  WignerGrid grid;
  grid.n = n;
  if (rho.dim() == n) {
    if (n > budget.max_n_one_mode) throw BudgetExceeded("one-mode Wigner grid exceeds budget");
    grid.dofs = 1;
    grid.values.resize(static_cast<std::size_t>(side) * side);
    const double scale = 1.0 / side;
    for (int q = 0; q < side; ++q) {
      for (int p = 0; p < side; ++p) {
        cplx w{};
        for (int a = 0; a < n; ++a) w += r(mod(q - a, n), a) * ph(mod(2 * a - q, side), p);
        w *= scale;
        grid.max_imag_residue = std::max(grid.max_imag_residue, std::abs(w.imag()));
        grid.values[static_cast<std::size_t>(q) * side + p] = w.real();
      }
    }
  } else if (rho.dim() == n * n) {
    if (n > budget.max_n_two_mode) throw BudgetExceeded("two-mode Wigner grid exceeds budget");
    grid.dofs = 2;
    const std::size_t s = side;
    grid.values.resize(s * s * s * s);
    const double scale = 1.0 / (static_cast<double>(side) * side);
    Matrix block(n, n);       // (a1, a2)
    Matrix partial(side, n);  // (p1, a2)
    for (int q1 = 0; q1 < side; ++q1) {
      for (int q2 = 0; q2 < side; ++q2) {
        for (int a1 = 0; a1 < n; ++a1)
          for (int a2 = 0; a2 < n; ++a2) block(a1, a2) = r(mod(q1 - a1, n) * n + mod(q2 - a2, n), a1 * n + a2);
        for (int p1 = 0; p1 < side; ++p1)
          for (int a2 = 0; a2 < n; ++a2) {
            cplx acc{};
            for (int a1 = 0; a1 < n; ++a1) acc += block(a1, a2) * ph(mod(2 * a1 - q1, side), p1);
            partial(p1, a2) = acc;
          }
        for (int p1 = 0; p1 < side; ++p1)
          for (int p2 = 0; p2 < side; ++p2) {
            cplx w{};
            for (int a2 = 0; a2 < n; ++a2) w += partial(p1, a2) * ph(mod(2 * a2 - q2, side), p2);
            w *= scale;
            grid.max_imag_residue = std::max(grid.max_imag_residue, std::abs(w.imag()));
            grid.values[((q1 * s + p1) * s + q2) * s + p2] = w.real();
          }
      }
    }
  } else {
    throw DimensionMismatch("density matrix dimension must be n or n^2");
  }
  if (grid.max_imag_residue > kWignerImagTolerance)
    throw NumericalHealthError("Wigner grid imaginary residue " + std::to_string(grid.max_imag_residue));
  return grid;
}

std::vector<double> position_marginal(const WignerGrid& grid) {
  if (grid.dofs != 1) throw InvalidArgument("marginals need a one-mode grid");
  std::vector<double> out(grid.n, 0.0);
  for (int j = 0; j < grid.n; ++j)
    for (int p = 0; p < grid.side(); ++p) out[j] += grid.at(2 * j, p);
  return out;
}

std::vector<double> momentum_marginal(const WignerGrid& grid) {
  if (grid.dofs != 1) throw InvalidArgument("marginals need a one-mode grid");
  std::vector<double> out(grid.n, 0.0);
  for (int k = 0; k < grid.n; ++k)
    for (int q = 0; q < grid.side(); ++q) out[k] += grid.at(q, 2 * k);
  return out;
}

double grid_inner_product(const WignerGrid& a, const WignerGrid& b) {
  if (a.n != b.n || a.dofs != b.dofs) throw DimensionMismatch("Wigner grids have different shapes");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc;
}

WignerSchmidtReport wigner_schmidt_crosscheck(const DensityMatrix& rho, Dims dims, WignerBudget budget) {
  if (dims.first != dims.second) throw DimensionMismatch("Wigner cross-check needs equal subsystem dimensions");
  const WignerGrid grid = wigner_grid(rho, HilbertDim(dims.first), budget);
  WignerSchmidtReport report;
  std::vector<double> g = singular_values(grid.as_matrix());
  double gn = 0.0;
  for (double x : g) gn += x * x;
  gn = std::sqrt(gn);
  for (double& x : g) x /= gn;
  report.grid_spectrum = std::move(g);
  report.operator_spectrum = operator_schmidt(rho, dims).normalized();
  const double lead = report.operator_spectrum.front();
  const std::size_t len = std::max(report.grid_spectrum.size(), report.operator_spectrum.size());
  for (std::size_t i = 0; i < len; ++i) {
    const double gi = i < report.grid_spectrum.size() ? report.grid_spectrum[i] : 0.0;
    const double oi = i < report.operator_spectrum.size() ? report.operator_spectrum[i] : 0.0;
    report.max_deviation = std::max(report.max_deviation, std::abs(gi - oi) / lead);
  }
  return report;
}

}  // namespace catotoc
