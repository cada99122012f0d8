#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catotoc/harness/config.hpp"

namespace catotoc::harness {

/// One override set per non-empty line, "key=value" pairs separated by
/// whitespace or ';'. Lines starting with '#' are skipped.
std::vector<Overrides> parse_grid(std::string_view text);
std::vector<Overrides> load_grid(const std::filesystem::path& path);

struct SweepOutcome {
  std::string name;  // subdirectory, config_000 ...
  bool ok = false;
  int exit_code = 0;  // as the CLI would report for this config alone
  std::string error;
};

/// Runs every override set on top of `base`, one subdirectory each. Failures
/// are recorded and the remaining configs still run.
std::vector<SweepOutcome> sweep(const ScenarioConfig& base, std::span<const Overrides> grid,
                                const std::filesystem::path& out_dir, int threads = 1);

}  // namespace catotoc::harness
