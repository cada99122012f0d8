#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catotoc/catmap.hpp"
#include "catotoc/states.hpp"

namespace catotoc::harness {

enum class Dynamics { ee, he, hh };
enum class OtocB { p2d, rho0, both };
enum class OutputKind { entropies, otocs, correlators, wigner_dump, schmidt_spectrum };

std::string_view to_string(Dynamics d);
std::string_view to_string(OtocB b);
std::string_view to_string(OutputKind o);

/// One scenario. Defaults are K = 0.25, Kc = 0.5, n = 64, both OTOC variants.
struct ScenarioConfig {
  Dynamics dynamics = Dynamics::hh;
  int n = 64;
  double k = 0.25;
  double kc = 0.5;
  PhasePoint center1{0.5, 0.5};
  PhasePoint center2{0.5, 0.5};
  int t_max = 50;
  OtocB otoc_b = OtocB::both;
  std::set<OutputKind> outputs{OutputKind::entropies, OutputKind::otocs, OutputKind::correlators};
  // log-linear growth fit window, inclusive
  int fit_begin = 0;
  int fit_end = 2;

  void validate() const;
  CoupledSpec coupled_spec() const;
  bool wants(OutputKind o) const { return outputs.contains(o); }
};

using Override = std::pair<std::string, std::string>;
using Overrides = std::vector<Override>;

/// Sets one key; throws ConfigError for unknown keys or malformed values.
void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key = value" document; '#' starts a comment.
Overrides parse_key_values(std::string_view text);
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

/// Every key with its resolved value, in a fixed order.
std::string echo_config(const ScenarioConfig& cfg);

std::string format_double(double x);

}  // namespace catotoc::harness
