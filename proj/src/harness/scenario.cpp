#include "catotoc/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "catotoc/entropy.hpp"
#include "catotoc/otoc.hpp"
#include "catotoc/states.hpp"

namespace catotoc::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fit_text(const GrowthFit& f) {
  if (!f.valid) return "undefined";
  std::ostringstream os;
  os << "window=[" << f.begin << "," << f.end << "] slope=" << format_double(f.slope)
     << " intercept=" << format_double(f.intercept) << " r2=" << format_double(f.r2);
  return os.str();
}

}  // namespace

std::optional<std::string> check_record(const TimeSeriesRecord& r) {
  auto where = [&](const std::string& what) { return "t=" + std::to_string(r.t) + ": " + what; };
  if (!std::isnan(r.s_linear)) {
    const double pur = 1.0 - r.s_linear;
    if (std::abs(std::exp(-r.s_renyi2) - pur) > kPurityIdentityTol)
      return where("exp(-S2) differs from purity by " + format_double(std::abs(std::exp(-r.s_renyi2) - pur)));
    if (r.s_renyi2 > r.s_vn + kRenyiOrderTol) return where("S2 exceeds S_VN");
  }
  if (!std::isnan(r.c2) && !std::isnan(r.otoc_xp)) {
    // state-expectation averaging, normalization factor 1
    const double res = std::abs(r.otoc_xp + 2.0 * (r.c4_real - r.c2));
    if (res > kSplitTolerance) return where("C != -2(Re C4 - C2), residual " + format_double(res));
  } else if (!std::isnan(r.c2) && !std::isnan(r.otoc_xrho)) {
    const double res = std::abs(r.otoc_xrho + 2.0 * (r.c4_real - r.c2));
    if (res > kSplitTolerance) return where("C != -2(Re C4 - C2), residual " + format_double(res));
  }
  return std::nullopt;
}

GrowthFit fit_log_linear(std::span<const double> series, int begin, int end) {
  GrowthFit f;
  f.begin = std::max(begin, 0);
  f.end = std::min(end, static_cast<int>(series.size()) - 1);
  if (f.end - f.begin < 1) return f;
  std::vector<double> x, y;
  for (int t = f.begin; t <= f.end; ++t) {
    const double v = series[t];
    if (!(v > 0.0) || !std::isfinite(v)) return f;
    x.push_back(t);
    y.push_back(std::log(v));
  }
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  f.valid = true;
  return f;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("pearson: need two equal-length series");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> ScenarioResult::column(double TimeSeriesRecord::*field) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.*field);
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const CoupledSpec spec = cfg.coupled_spec();
  spec.validate();
  const HilbertDim n = spec.n;
  const Dims dims = spec.dims();
  const FloquetPropagator u = FloquetPropagator::build(spec);
  const StateVector psi0 = product_state(coherent_state(n, cfg.center1), coherent_state(n, cfg.center2));

  ScenarioResult res;
  res.config = cfg;
  const int steps = cfg.t_max + 1;
  res.records.resize(steps);
  for (int t = 0; t < steps; ++t) res.records[t].t = t;

  const bool want_otoc = cfg.wants(OutputKind::otocs) || cfg.wants(OutputKind::correlators);
  const bool want_xp = want_otoc && cfg.otoc_b != OtocB::rho0;
  const bool want_xrho = want_otoc && cfg.otoc_b != OtocB::p2d;
  const bool want_entropy = cfg.wants(OutputKind::entropies) || cfg.wants(OutputKind::otocs);

  // OTOCs
  std::vector<Observable> bs;
  if (want_xp) bs.push_back(momentum_2d(dims));
  if (want_xrho) bs.push_back(Observable::projector(psi0));
  std::vector<std::vector<CorrelatorSample>> series;
  if (!bs.empty()) series = otoc_series(position_2d(dims), bs, psi0, u, cfg.t_max);
  for (int t = 0; t < steps; ++t) {
    auto& r = res.records[t];
    r.otoc_xp = want_xp ? series[0][t].c : kNaN;
    r.otoc_xrho = want_xrho ? series[bs.size() - 1][t].c : kNaN;
    if (cfg.wants(OutputKind::correlators) && want_otoc) {
      const auto& s = series[0][t];  // X,P pair when enabled, otherwise X,rho0
      r.c2 = s.c2;
      r.c4_real = s.c4_real;
      r.c4_imag = s.c4_imag;
    } else {
      r.c2 = r.c4_real = r.c4_imag = kNaN;
    }
    if (!cfg.wants(OutputKind::otocs)) r.otoc_xp = r.otoc_xrho = kNaN;
  }

  // entropies, Schmidt data and Wigner dumps along one forward trajectory
  std::vector<int> dump_times;
  if (cfg.wants(OutputKind::wigner_dump)) {
    dump_times = {0, cfg.t_max / 2, cfg.t_max};
    dump_times.erase(std::unique(dump_times.begin(), dump_times.end()), dump_times.end());
  }
  Vector v = psi0.amplitudes();
  for (int t = 0; t < steps; ++t) {
    if (t > 0) v = u.apply(v);
    const double drift = std::abs(v.norm() - 1.0);
    if (drift > 1e-10)
      throw NumericalHealthError("state norm drifted by " + format_double(drift) + " at t=" + std::to_string(t));
    auto& r = res.records[t];
    const bool need_state = want_entropy || cfg.wants(OutputKind::schmidt_spectrum) || !dump_times.empty();
    if (!need_state) {
      r.s_linear = r.s_vn = r.s_renyi2 = kNaN;
      continue;
    }
    const StateVector psi(v, 1e-10);
    const DensityMatrix rho1 = partial_trace_pure(psi, dims, Subsystem::first);
    const DensityMatrix rho2 = partial_trace_pure(psi, dims, Subsystem::second);
    const EntropySample e1 = entropy_sample(t, rho1);
    const EntropySample e2 = entropy_sample(t, rho2);
    if (std::abs(e1.s_vn - e2.s_vn) > kMarginalSymmetryTol || std::abs(e1.s_linear - e2.s_linear) > kMarginalSymmetryTol)
      throw NumericalHealthError("marginal entropies disagree at t=" + std::to_string(t));
    if (want_entropy) {
      r.s_linear = e1.s_linear;
      r.s_vn = e1.s_vn;
      r.s_renyi2 = e1.s_renyi2;
    } else {
      r.s_linear = r.s_vn = r.s_renyi2 = kNaN;
    }
    if (cfg.wants(OutputKind::schmidt_spectrum)) {
      SchmidtRow row;
      row.t = t;
      row.wse = wse_pure_fast(psi, dims);
      if (std::abs(row.wse - 2.0 * e1.s_vn) > kWsePureTol)
        throw NumericalHealthError("WSE differs from 2 S_VN at t=" + std::to_string(t));
      auto coeffs = state_schmidt_coefficients(psi, dims);
      coeffs.resize(std::min<std::size_t>(coeffs.size(), kSchmidtColumns));
      row.coefficients = std::move(coeffs);
      res.schmidt.push_back(std::move(row));
    }
    if (std::find(dump_times.begin(), dump_times.end(), t) != dump_times.end()) {
      res.wigner.push_back({t, 1, wigner_grid(rho1, n)});
      res.wigner.push_back({t, 2, wigner_grid(rho2, n)});
    }
  }

  // rescaled OTOC columns, fitted against S_L
  const auto sl = res.column(&TimeSeriesRecord::s_linear);
  auto rescale = [&](double TimeSeriesRecord::*src, double TimeSeriesRecord::*dst, bool enabled) -> std::string {
    if (!enabled || !want_entropy) {
      for (auto& r : res.records) r.*dst = kNaN;
      return "disabled";
    }
    const auto col = res.column(src);
    double alpha = kNaN;
    try {
      alpha = rescale_factor(col, sl);
    } catch (const InvalidArgument&) {
      for (auto& r : res.records) r.*dst = kNaN;
      return "undefined (zero series or reference)";
    }
    for (auto& r : res.records) r.*dst = alpha * (r.*src);
    return format_double(alpha);
  };
  const bool otocs_out = cfg.wants(OutputKind::otocs);
  const std::string alpha_xp = rescale(&TimeSeriesRecord::otoc_xp, &TimeSeriesRecord::otoc_xp_rescaled, otocs_out && want_xp);
  const std::string alpha_xrho =
      rescale(&TimeSeriesRecord::otoc_xrho, &TimeSeriesRecord::otoc_xrho_rescaled, otocs_out && want_xrho);

  for (const auto& r : res.records)
    if (auto err = check_record(r)) throw NumericalHealthError("row identity violated, " + *err);

  if (otocs_out) {
    if (want_xp) res.fit_xp = fit_log_linear(res.column(&TimeSeriesRecord::otoc_xp), cfg.fit_begin, cfg.fit_end);
    if (want_xrho) res.fit_xrho = fit_log_linear(res.column(&TimeSeriesRecord::otoc_xrho), cfg.fit_begin, cfg.fit_end);
  }

  const RmtSaturation sat = rmt_saturation(n);
  auto& md = res.metadata;
  md.emplace_back("version", CATOTOC_VERSION);
  md.emplace_back("dft_convention", std::string(kDftConvention));
  md.emplace_back("wigner_convention", std::string(kWignerConvention));
  md.emplace_back("propagator", "U_jk = A exp[i pi (M11 j^2 - 2jk + M22 k^2)/(n M12)] exp[i K n cos(2 pi j/n)/(2 pi)], kick on row index; coupling diag exp[i n Kc cos(2 pi (j1+j2)/n)/(2 pi)] applied after U1 x U2");
  md.emplace_back("coherent_state", "periodized gaussian, images |m| <= " + std::to_string(coherent_state_images(n)));
  md.emplace_back("entropy_log", "natural");
  md.emplace_back("entropy_subsystem", "first (marginal symmetry checked to " + format_double(kMarginalSymmetryTol) + ")");
  md.emplace_back("otoc_a", "X2D = X (x) X");
  md.emplace_back("otoc_averaging", std::string(to_string(Averaging::state_expectation)));
  md.emplace_back("otoc_xrho_b", "rho0 = |psi0><psi0|");
  md.emplace_back("correlator_pair", cfg.wants(OutputKind::correlators) && want_otoc
                                         ? (want_xp ? "X2D,P2D" : "X2D,rho0")
                                         : "disabled");
  md.emplace_back("c2_convention", "symmetrized (<B A A B> + <A B B A>)/2");
  md.emplace_back("eq5_norm_factor", "1");
  md.emplace_back("rescale_method", "nonnegative least-squares factor against s_linear");
  md.emplace_back("rescale_alpha_xp", alpha_xp);
  md.emplace_back("rescale_alpha_xrho", alpha_xrho);
  md.emplace_back("growth_fit_xp", fit_text(res.fit_xp));
  md.emplace_back("growth_fit_xrho", fit_text(res.fit_xrho));
  md.emplace_back("rmt_purity_sat", format_double(sat.purity_sat) + " (" + std::string(RmtSaturation::purity_provenance) + ")");
  md.emplace_back("rmt_s_l_sat", format_double(sat.s_l_sat));
  md.emplace_back("rmt_s_vn_sat", format_double(sat.s_vn_sat) + " (" + std::string(RmtSaturation::s_vn_provenance) + ")");
  return res;
}

}  // namespace catotoc::harness
