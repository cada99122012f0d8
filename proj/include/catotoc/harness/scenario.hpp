#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catotoc/harness/config.hpp"
#include "catotoc/wigner.hpp"

namespace catotoc::harness {

/// One row of timeseries.csv. Disabled columns hold NaN.
struct TimeSeriesRecord {
  int t = 0;
  double s_linear = 0.0;
  double s_vn = 0.0;
  double s_renyi2 = 0.0;
  double otoc_xp = 0.0;
  double otoc_xrho = 0.0;
  double c2 = 0.0;
  double c4_real = 0.0;
  double c4_imag = 0.0;
  double otoc_xp_rescaled = 0.0;
  double otoc_xrho_rescaled = 0.0;
};

inline constexpr double kPurityIdentityTol = 1e-12;
inline constexpr double kRenyiOrderTol = 1e-10;
inline constexpr double kMarginalSymmetryTol = 1e-9;
inline constexpr double kWsePureTol = 1e-9;

/// Row-level identities; returns a description of the first violation.
std::optional<std::string> check_record(const TimeSeriesRecord& r);

struct GrowthFit {
  bool valid = false;
  int begin = 0;
  int end = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(series[t]) against t over [begin, end], clamped to the series.
GrowthFit fit_log_linear(std::span<const double> series, int begin, int end);

double pearson(std::span<const double> x, std::span<const double> y);

struct WignerDump {
  int t = 0;
  int subsystem = 1;
  WignerGrid grid;
};

struct SchmidtRow {
  int t = 0;
  double wse = 0.0;
  std::vector<double> coefficients;  // leading state Schmidt coefficients
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<TimeSeriesRecord> records;
  std::vector<SchmidtRow> schmidt;
  std::vector<WignerDump> wigner;
  GrowthFit fit_xp;
  GrowthFit fit_xrho;
  Metadata metadata;

  std::vector<double> column(double TimeSeriesRecord::*field) const;
};

inline constexpr int kSchmidtColumns = 16;

/// Runs one scenario; throws NumericalHealthError if any row identity fails.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace catotoc::harness
