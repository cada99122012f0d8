#pragma once

#include <array>
#include <filesystem>

#include "catotoc/harness/scenario.hpp"

namespace catotoc::harness {

struct FigureSuiteOptions {
  ScenarioConfig base;  // n, k, kc, t_max, otoc_b and fit window are taken from here
  int threads = 1;
};

inline constexpr int kFigurePanels = 4;

/// EE@(0.5,0.5), EE@(pi/4,pi/4), HE@(0.5,0.5), HH@(0.5,0.5), in panel order.
std::array<ScenarioConfig, kFigurePanels> canonical_scenarios(const ScenarioConfig& base);

struct FigureSuiteResult {
  std::array<ScenarioResult, kFigurePanels> panels;
  std::array<double, kFigurePanels> s_vn_scale{};  // factor applied to s_vn in fig5 panels
};

FigureSuiteResult run_figure_suite(const FigureSuiteOptions& opts);

/// Runs the suite and writes fig1..fig4 scenario directories, fig5a..d.csv,
/// growth_fits.txt and config.txt under out_dir.
FigureSuiteResult run_figure_suite(const std::filesystem::path& out_dir, const FigureSuiteOptions& opts);

}  // namespace catotoc::harness
