#include "catotoc/harness/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "catotoc/harness/output.hpp"
#include "catotoc/harness/parallel.hpp"
#include "catotoc/harness/scenario.hpp"

namespace catotoc::harness {

std::vector<Overrides> parse_grid(std::string_view text) {
  std::vector<Overrides> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& ch : line)
      if (ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
    std::istringstream words(line);
    std::string w;
    Overrides set;
    bool comment = false;
    while (words >> w) {
      if (w.front() == '#') {
        comment = true;
        break;
      }
      const auto eq = w.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("grid line " + std::to_string(line_no) + ": expected key=value, got '" + w + "'");
      set.emplace_back(w.substr(0, eq), w.substr(eq + 1));
    }
    if (!set.empty()) grid.push_back(std::move(set));
    else if (!comment && line.find_first_not_of(' ') != std::string::npos)
      throw ConfigError("grid line " + std::to_string(line_no) + " is malformed");
  }
  return grid;
}

std::vector<Overrides> load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read grid file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str());
}

std::vector<SweepOutcome> sweep(const ScenarioConfig& base, std::span<const Overrides> grid,
                                const std::filesystem::path& out_dir, int threads) {
  const int count = static_cast<int>(grid.size());
  std::vector<SweepOutcome> outcomes(count);
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "config_%03d", i);
    outcomes[i].name = name;
  }
  parallel_for(count, threads, [&](int i) {
    auto& o = outcomes[i];
    try {
      ScenarioConfig cfg = base;
      for (const auto& [k, v] : grid[i]) apply_override(cfg, k, v);
      cfg.validate();
      write_scenario(out_dir / o.name, run_scenario(cfg));
      o.ok = true;
    } catch (const ConfigError& e) {
      o.exit_code = 1;
      o.error = e.what();
    } catch (const InvalidArgument& e) {
      o.exit_code = 1;
      o.error = e.what();
    } catch (const NumericalHealthError& e) {
      o.exit_code = 2;
      o.error = e.what();
    } catch (const std::exception& e) {
      o.exit_code = 2;
      o.error = e.what();
    }
  });
  return outcomes;
}

}  // namespace catotoc::harness
