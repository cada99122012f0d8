// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "catotoc/classical.hpp"
#include "catotoc/entropy.hpp"
#include "catotoc/harness/figures.hpp"
#include "catotoc/harness/output.hpp"
#include "catotoc/otoc.hpp"
#include "catotoc/random.hpp"
#include "catotoc/states.hpp"
#include "catotoc/wigner.hpp"
#include "oracles.hpp"

using namespace catotoc;
using namespace catotoc::harness;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(budget_s) + " s budget";
  }
  failures += !o.pass;
  std::printf("%s criterion %d: %s [%s] (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

CoupledSpec spec_of(int which, int n) {
  const MapSpec h = MapSpec::hyperbolic(0.25), e = MapSpec::elliptic(0.25);
  const MapSpec pairs[3][2] = {{e, e}, {h, e}, {h, h}};
  return {pairs[which][0], pairs[which][1], 0.5, HilbertDim(n)};
}

StateVector psi0(int n, double q = 0.5, double p = 0.5) {
  const auto c = coherent_state(HilbertDim(n), PhasePoint(q, p));
  return product_state(c, c);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& diff) {
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    ++files;
    if (!fs::exists(b / rel) || slurp(e.path()) != slurp(b / rel)) {
      diff = rel.string();
      return false;
    }
  }
  diff = std::to_string(files) + " files identical";
  return files > 0;
}

}  // namespace

int main() {
  criterion(1, "propagator unitarity, n in {4..64}, three scenarios", 30.0, [] {
    double worst = 0;
    for (int n : {4, 8, 16, 32, 64})
      for (int w = 0; w < 3; ++w) {
        const CoupledSpec s = spec_of(w, n);
        worst = std::max(worst, propagator_1d(s.first, s.n).unitarity_residual());
        worst = std::max(worst, propagator_1d(s.second, s.n).unitarity_residual());
        const FloquetPropagator u = FloquetPropagator::build(s);
        worst = std::max(worst, oracle::max_abs(u.apply_adjoint(u.dense()) - Matrix::Identity(n * n, n * n)));
      }
    return Outcome{worst <= 1e-8, "max |U^dag U - I| = " + num(worst)};
  });

  criterion(2, "C(t) = -2[C4 - C2]/N, n = 8, t <= 10", 60.0, [] {
    Rng rng(2024);
    const FloquetPropagator u = FloquetPropagator::build(spec_of(2, 8));
    const DensityMatrix rho = density_of(psi0(8));
    double worst = 0;
    auto residual = [](const CorrelatorSample& s) { return std::abs(s.c + 2.0 * (s.c4_real - s.c2) / s.norm_factor); };
    for (Averaging avg : {Averaging::state_expectation, Averaging::normalized_trace}) {
      OtocConfig xp;
      xp.average = avg;
      for (int t = 0; t <= 10; ++t) worst = std::max(worst, residual(otoc_full(xp, rho, u, t)));
    }
    for (int i = 0; i < 50; ++i) {
      OtocConfig cfg;
      cfg.average = i % 2 ? Averaging::normalized_trace : Averaging::state_expectation;
      cfg.operator_a = OperatorA::custom;
      cfg.operator_b = OperatorB::custom;
      cfg.custom_a = Observable::dense(ComplexOperator(random_hermitian(64, rng), OpProperty::hermitian));
      cfg.custom_b = Observable::dense(ComplexOperator(random_hermitian(64, rng), OpProperty::hermitian));
      worst = std::max(worst, residual(otoc_full(cfg, rho, u, i % 11)));
    }
    return Outcome{worst <= 1e-8, "max residual " + num(worst)};
  });

  criterion(3, "OTOC-RE basis sum = Tr rho1^2 = exp(-S2), n = 8", 300.0, [] {
    double worst = 0;
    for (int w = 0; w < 3; ++w) {
      const FloquetPropagator u = FloquetPropagator::build(spec_of(w, 8));
      const StateVector psi = psi0(8);
      const Matrix d = u.dense();
      for (int t : {0, 1, 2, 4, 8}) {
        Vector pt = psi.amplitudes();
        for (int s = 0; s < t; ++s) pt = d * pt;
        const Matrix r1 = oracle::partial_trace(pt * pt.adjoint(), 8, 8, 1);
        const double pur = (r1 * r1).trace().real();
        const double s2 = renyi2(DensityMatrix((r1 + r1.adjoint()) / 2.0));
        const double sum = otoc_re_sum(psi, u, t);
        worst = std::max({worst, std::abs(sum - pur), std::abs(sum - std::exp(-s2))});
      }
    }
    return Outcome{worst <= 1e-8, "max deviation " + num(worst)};
  });

  criterion(4, "pure-state WSE = 2 S_VN at n = 8, 16 and fast path at n = 64", 120.0, [] {
    double worst = 0;
    for (int n : {8, 16, 64}) {
      const CoupledSpec s = spec_of(2, n);
      const FloquetPropagator u = FloquetPropagator::build(s);
      Vector v = psi0(n, 0.3, 0.6).amplitudes();
      for (int t = 0; t <= 6; ++t) {
        if (t > 0) v = u.apply(v);
        const StateVector psi(v, 1e-10);
        const Matrix r1 = oracle::partial_trace(v * v.adjoint(), n, n, 1);
        const double svn = oracle::von_neumann((r1 + r1.adjoint()) / 2.0);
        if (n <= 16) worst = std::max(worst, std::abs(wse(operator_schmidt(density_of(psi), s.dims())) - 2.0 * svn));
        worst = std::max(worst, std::abs(wse_pure_fast(psi, s.dims()) - 2.0 * svn));
      }
    }
    return Outcome{worst <= 1e-9, "max |h - 2 S_VN| = " + num(worst)};
  });

  criterion(5, "Wigner-grid spectrum matches operator-Schmidt spectrum, n <= 8", 120.0, [] {
    Rng rng(5);
    double worst = 0;
    for (int n = 2; n <= 8; ++n) {
      const CoupledSpec s = spec_of(2, n);
      const FloquetPropagator u = FloquetPropagator::build(s);
      const StateVector psi(u.apply(psi0(n, 0.3, 0.6).amplitudes(), 3), 1e-10);
      worst = std::max(worst, wigner_schmidt_crosscheck(density_of(psi), s.dims()).max_deviation);
      worst = std::max(worst, wigner_schmidt_crosscheck(random_density(n * n, 2, rng), s.dims()).max_deviation);
    }
    return Outcome{worst <= 1e-6, "max relative deviation " + num(worst)};
  });

  criterion(6, "Lyapunov exponent of [[2,1],[3,2]] = ln(2 + sqrt 3)", 5.0, [] {
    const auto l = lyapunov_estimate(MapSpec::hyperbolic(0.0), 10000, {0.1234, 0.5678});
    const double err = std::abs(l[0] - std::log(2.0 + std::sqrt(3.0)));
    return Outcome{err <= 1e-4, "lambda = " + num(l[0]) + ", error " + num(err)};
  });

  FigureSuiteResult suite;
  const fs::path root = fs::temp_directory_path() / ("catotoc_acceptance_" + std::to_string(std::random_device{}()));
  criterion(7, "figure phenomenology at n = 64, t_max = 50", 600.0, [&] {
    FigureSuiteOptions o;
    o.threads = 1;
    suite = run_figure_suite(root / "run1", o);
    const auto sl = [&](int i) { return suite.panels[i].column(&TimeSeriesRecord::s_linear); };
    const auto ee = sl(0), ee4 = sl(1), he = sl(2), hh = sl(3);
    const double sat = rmt_saturation(HilbertDim(64)).s_l_sat;
    std::string why;
    bool ok = true;
    auto need = [&](bool c, const std::string& what) {
      if (!c) {
        ok = false;
        why += what + "; ";
      }
    };
    // Fig. 1: bounded, oscillating
    const double ee_max = *std::max_element(ee.begin(), ee.end());
    int turns = 0;
    for (std::size_t t = 2; t < ee.size(); ++t) turns += (ee[t] - ee[t - 1]) * (ee[t - 1] - ee[t - 2]) < 0;
    need(ee_max < 0.2, "EE@0.5 max S_L " + num(ee_max));
    need(turns >= 4, "EE@0.5 not oscillating");
    // Fig. 2
    double gap = 1e9;
    for (std::size_t t = 10; t < ee.size(); ++t) gap = std::min(gap, ee4[t] - ee[t]);
    need(gap > 0, "EE@pi/4 below EE@0.5 for some t >= 10");
    // Fig. 3
    need(he.back() > 0.5 * sat, "HE S_L(50) " + num(he.back()));
    for (int t = 1; t <= 3; ++t) need(he[t] < hh[t], "HE not slower than HH at t=" + std::to_string(t));
    double early = 0, late = 0;
    for (int t = 1; t <= 10; ++t) early += he[t] / 10;
    for (int t = 41; t <= 50; ++t) late += he[t] / 10;
    need(late > early, "HE shows no upward trend");
    // Fig. 4
    need(hh.back() >= 0.9 * sat, "HH S_L(50) " + num(hh.back()));
    const GrowthFit& fit = suite.panels[3].fit_xrho;
    need(fit.valid && fit.r2 >= 0.95, "HH otoc_xrho fit R^2 " + num(fit.r2));
    const double rho = pearson(suite.panels[3].column(&TimeSeriesRecord::otoc_xrho_rescaled), hh);
    need(rho >= 0.9, "HH Pearson " + num(rho));
    std::string detail = "EE max " + num(ee_max) + ", min gap " + num(gap) + ", HE(50) " + num(he.back()) +
                         ", HH(50)/sat " + num(hh.back() / sat) + ", fit [" + std::to_string(fit.begin) + "," +
                         std::to_string(fit.end) + "] R^2 " + num(fit.r2) + " slope " + num(fit.slope) +
                         ", Pearson " + num(rho);
    return Outcome{ok, why.empty() ? detail : why + detail};
  });

  criterion(8, "entropy cross-identities on every emitted row", 120.0, [&] {
    double purity_err = 0, order = -1, sym = 0;
    int rows = 0;
    for (const auto& panel : suite.panels) {
      const CoupledSpec s = panel.config.coupled_spec();
      const FloquetPropagator u = FloquetPropagator::build(s);
      Vector v = product_state(coherent_state(s.n, panel.config.center1), coherent_state(s.n, panel.config.center2)).amplitudes();
      for (const auto& r : panel.records) {
        if (r.t > 0) v = u.apply(v);
        ++rows;
        purity_err = std::max(purity_err, std::abs(std::exp(-r.s_renyi2) - (1.0 - r.s_linear)));
        order = std::max(order, r.s_renyi2 - r.s_vn);
        // the second marginal, from the amplitude matrix written out here
        const int n = s.n.value();
        Matrix m(n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) m(a, b) = v(a * n + b);
        const Matrix r2 = m.transpose() * m.conjugate();
        sym = std::max(sym, std::abs(oracle::von_neumann((r2 + r2.adjoint()) / 2.0) - r.s_vn));
      }
    }
    const bool ok = rows == 204 && purity_err <= 1e-12 && order <= 1e-10 && sym <= 1e-9;
    return Outcome{ok, std::to_string(rows) + " rows, exp(-S2) vs purity " + num(purity_err) + ", max(S2 - S_VN) " +
                           num(order) + ", |S(rho1) - S(rho2)| " + num(sym)};
  });

  criterion(9, "byte-identical outputs across runs and thread counts", 300.0, [&] {
    FigureSuiteOptions o;
    o.threads = 1;
    run_figure_suite(root / "run2", o);
    o.threads = 4;
    run_figure_suite(root / "run4", o);
    std::string d1, d2;
    const bool a = same_tree(root / "run1", root / "run2", d1);
    const bool b = same_tree(root / "run1", root / "run4", d2);
    return Outcome{a && b, "repeat: " + d1 + "; 4 threads: " + d2};
  });

  std::error_code ec;
  fs::remove_all(root, ec);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
