#include "catotoc/harness/figures.hpp"

#include <algorithm>
#include <sstream>

#include "catotoc/entropy.hpp"
#include "catotoc/harness/output.hpp"
#include "catotoc/harness/parallel.hpp"

namespace catotoc::harness {

std::array<ScenarioConfig, kFigurePanels> canonical_scenarios(const ScenarioConfig& base) {
  std::array<ScenarioConfig, kFigurePanels> out{base, base, base, base};
  const PhasePoint mid(0.5, 0.5), quarter_pi(kPi / 4.0, kPi / 4.0);
  const Dynamics dyn[] = {Dynamics::ee, Dynamics::ee, Dynamics::he, Dynamics::hh};
  for (int i = 0; i < kFigurePanels; ++i) {
    out[i].dynamics = dyn[i];
    out[i].center1 = out[i].center2 = (i == 1 ? quarter_pi : mid);
  }
  return out;
}

FigureSuiteResult run_figure_suite(const FigureSuiteOptions& opts) {
  const auto cfgs = canonical_scenarios(opts.base);
  FigureSuiteResult res;
  const auto errors = parallel_for(kFigurePanels, opts.threads, [&](int i) { res.panels[i] = run_scenario(cfgs[i]); });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const RmtSaturation sat = rmt_saturation(HilbertDim(opts.base.n));
  for (int i = 0; i < kFigurePanels; ++i) {
    const auto& p = res.panels[i];
    if (p.config.dynamics == Dynamics::ee) {
      // no saturation to speak of; match the maxima instead
      const auto sl = p.column(&TimeSeriesRecord::s_linear);
      const auto sv = p.column(&TimeSeriesRecord::s_vn);
      const double ml = *std::max_element(sl.begin(), sl.end());
      const double mv = *std::max_element(sv.begin(), sv.end());
      res.s_vn_scale[i] = mv > 0.0 ? ml / mv : 1.0;
    } else {
      res.s_vn_scale[i] = sat.s_l_sat / sat.s_vn_sat;
    }
  }
  return res;
}

FigureSuiteResult run_figure_suite(const std::filesystem::path& out_dir, const FigureSuiteOptions& opts) {
  FigureSuiteResult res = run_figure_suite(opts);
  std::filesystem::create_directories(out_dir);
  const char* labels[] = {"ee_0.5", "ee_pi4", "he_0.5", "hh_0.5"};
  std::ostringstream fits;
  fits << "panel,scenario,series,begin,end,slope,intercept,r2\n";
  for (int i = 0; i < kFigurePanels; ++i) {
    const auto& p = res.panels[i];
    write_scenario(out_dir / ("fig" + std::to_string(i + 1)), p);

    std::ostringstream f5;
    f5 << "# s_vn_scale = " << format_double(res.s_vn_scale[i])
       << (p.config.dynamics == Dynamics::ee ? " (max-normalization)" : " (rmt saturation ratio s_l_sat/s_vn_sat)")
       << '\n';
    f5 << "t,s_linear,s_vn_rescaled\n";
    for (const auto& r : p.records)
      f5 << r.t << ',' << format_double(r.s_linear) << ',' << format_double(r.s_vn * res.s_vn_scale[i]) << '\n';
    write_text_file(out_dir / ("fig5" + std::string(1, static_cast<char>('a' + i)) + ".csv"), f5.str());

    for (const auto& [name, fit] : {std::pair{"otoc_xp", p.fit_xp}, std::pair{"otoc_xrho", p.fit_xrho}}) {
      fits << "fig" << i + 1 << ',' << labels[i] << ',' << name << ',';
      if (fit.valid)
        fits << fit.begin << ',' << fit.end << ',' << format_double(fit.slope) << ',' << format_double(fit.intercept)
             << ',' << format_double(fit.r2) << '\n';
      else
        fits << "nan,nan,nan,nan,nan\n";
    }
  }
  write_text_file(out_dir / "growth_fits.txt", fits.str());
  write_text_file(out_dir / "config.txt", echo_config(opts.base));
  return res;
}

}  // namespace catotoc::harness
