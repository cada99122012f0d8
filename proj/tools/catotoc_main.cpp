// catotoc command line: run | figures | verify | sweep

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "catotoc/errors.hpp"
#include "catotoc/harness/config.hpp"
#include "catotoc/harness/figures.hpp"
#include "catotoc/harness/output.hpp"
#include "catotoc/harness/scenario.hpp"
#include "catotoc/harness/sweep.hpp"
#include "catotoc/harness/verify.hpp"

namespace fs = std::filesystem;
using namespace catotoc::harness;

namespace {

enum Exit { kOk = 0, kUsage = 1, kHealth = 2, kVerify = 3 };

struct Flags {
  std::optional<std::string> config, dynamics, n, k, kc, center1, center2, tmax, otoc_b;
  std::string out = "catotoc_out";
  int threads = 1;
  std::string level = "fast";
  std::string grid;
};

ScenarioConfig resolve(const Flags& f) {
  ScenarioConfig cfg;
  if (f.config) cfg = load_config(*f.config);
  const std::pair<const char*, const std::optional<std::string>*> keys[] = {
      {"dynamics", &f.dynamics}, {"n", &f.n},           {"k", &f.k},         {"kc", &f.kc},
      {"center1", &f.center1},   {"center2", &f.center2}, {"tmax", &f.tmax}, {"otoc_b", &f.otoc_b}};
  for (const auto& [key, value] : keys)
    if (*value) apply_override(cfg, key, **value);
  cfg.validate();
  return cfg;
}

int cmd_run(const Flags& f) {
  const ScenarioConfig cfg = resolve(f);
  const ScenarioResult r = run_scenario(cfg);
  write_scenario(f.out, r);
  const auto& last = r.records.back();
  std::cout << "wrote " << (fs::path(f.out) / "timeseries.csv").string() << " (" << r.records.size() << " rows)\n"
            << "final s_linear = " << format_double(last.s_linear) << ", s_vn = " << format_double(last.s_vn) << '\n';
  return kOk;
}

int cmd_figures(const Flags& f) {
  FigureSuiteOptions opts;
  opts.base = resolve(f);
  opts.threads = f.threads;
  const FigureSuiteResult r = run_figure_suite(f.out, opts);
  const char* names[] = {"EE@(0.5,0.5)", "EE@(pi/4,pi/4)", "HE@(0.5,0.5)", "HH@(0.5,0.5)"};
  for (int i = 0; i < kFigurePanels; ++i) {
    const auto& rec = r.panels[i].records;
    std::cout << "fig" << i + 1 << ' ' << names[i] << ": final s_linear = " << format_double(rec.back().s_linear)
              << '\n';
  }
  std::cout << "outputs in " << f.out << '\n';
  return kOk;
}

int cmd_verify(const Flags& f, bool out_given) {
  VerifyLevel level;
  if (f.level == "fast") level = VerifyLevel::fast;
  else if (f.level == "full") level = VerifyLevel::full;
  else throw catotoc::ConfigError("--level must be fast or full");
  const VerifyReport report = verify(level);
  std::ostringstream csv;
  write_verify_report(csv, report);
  std::cout << csv.str();
  if (out_given) {
    fs::create_directories(f.out);
    write_text_file(fs::path(f.out) / "verify_report.csv", csv.str());
  }
  std::cerr << report.checks.size() - report.failures() << '/' << report.checks.size() << " invariants passed\n";
  return report.all_passed() ? kOk : kVerify;
}

int cmd_sweep(const Flags& f) {
  const ScenarioConfig base = resolve(f);
  const auto grid = load_grid(f.grid);
  const auto outcomes = sweep(base, grid, f.out, f.threads);
  int code = kOk;
  std::ostringstream summary;
  summary << "config,status,exit_code,error\n";
  for (const auto& o : outcomes) {
    std::string err = o.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    summary << o.name << ',' << (o.ok ? "ok" : "failed") << ',' << o.exit_code << ',' << err << '\n';
    if (!o.ok) {
      std::cerr << o.name << ": " << o.error << '\n';
      if (code == kOk) code = o.exit_code;
    }
  }
  if (!outcomes.empty()) {
    fs::create_directories(f.out);
    write_text_file(fs::path(f.out) / "sweep_summary.csv", summary.str());
  }
  std::cout << outcomes.size() << " configs, " << std::count_if(outcomes.begin(), outcomes.end(), [](auto& o) { return o.ok; })
            << " succeeded\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled quantum cat maps: OTOCs, entropies and phase-space diagnostics"};
  app.set_version_flag("--version", std::string(CATOTOC_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--dynamics", f.dynamics, "ee, he or hh")->check(CLI::IsMember({"ee", "he", "hh"}));
  app.add_option("--n", f.n, "Hilbert dimension per degree of freedom");
  app.add_option("--k", f.k, "kick strength K");
  app.add_option("--kc", f.kc, "coupling strength Kc");
  app.add_option("--center1", f.center1, "coherent-state center q,p of the first map");
  app.add_option("--center2", f.center2, "coherent-state center q,p of the second map");
  app.add_option("--tmax", f.tmax, "number of steps");
  app.add_option("--otoc-b", f.otoc_b, "p2d, rho0 or both")->check(CLI::IsMember({"p2d", "rho0", "both"}));
  auto* out_opt = app.add_option("--out", f.out, "output directory");
  app.add_option("--threads", f.threads, "concurrent scenarios")->check(CLI::PositiveNumber);
  app.add_option("--level", f.level, "verify level: fast or full")->check(CLI::IsMember({"fast", "full"}));

  auto* run = app.add_subcommand("run", "run one scenario");
  auto* figures = app.add_subcommand("figures", "run the four canonical scenarios");
  auto* verify_cmd = app.add_subcommand("verify", "check every invariant and report residuals");
  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of config overrides");
  sweep_cmd->add_option("--grid", f.grid, "file with one override set per line")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(f);
    if (figures->parsed()) return cmd_figures(f);
    if (verify_cmd->parsed()) return cmd_verify(f, out_opt->count() > 0);
    if (sweep_cmd->parsed()) return cmd_sweep(f);
  } catch (const catotoc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const catotoc::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const catotoc::NumericalHealthError& e) {
    std::cerr << "numerical health failure: " << e.what() << '\n';
    return kHealth;
  } catch (const catotoc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kHealth;
  }
  return kUsage;
}
