#include "catotoc/harness/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace catotoc::harness {

std::string_view to_string(Dynamics d) {
  switch (d) {
    case Dynamics::ee: return "ee";
    case Dynamics::he: return "he";
    case Dynamics::hh: return "hh";
  }
  return "?";
}

std::string_view to_string(OtocB b) {
  switch (b) {
    case OtocB::p2d: return "p2d";
    case OtocB::rho0: return "rho0";
    case OtocB::both: return "both";
  }
  return "?";
}

std::string_view to_string(OutputKind o) {
  switch (o) {
    case OutputKind::entropies: return "entropies";
    case OutputKind::otocs: return "otocs";
    case OutputKind::correlators: return "correlators";
    case OutputKind::wigner_dump: return "wigner_dump";
    case OutputKind::schmidt_spectrum: return "schmidt_spectrum";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) bad_value(key, value);
  return x;
}

int parse_int(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || x < -1000000000L || x > 1000000000L)
    bad_value(key, value);
  return static_cast<int>(x);
}

std::pair<double, double> parse_pair(std::string_view key, std::string_view value) {
  const auto parts = split(value, ',');
  if (parts.size() != 2) bad_value(key, value);
  return {parse_real(key, parts[0]), parse_real(key, parts[1])};
}

}  // namespace

void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "dynamics") {
    if (value == "ee") cfg.dynamics = Dynamics::ee;
    else if (value == "he") cfg.dynamics = Dynamics::he;
    else if (value == "hh") cfg.dynamics = Dynamics::hh;
    else bad_value(key, value);
  } else if (key == "n") {
    cfg.n = parse_int(key, value);
  } else if (key == "k") {
    cfg.k = parse_real(key, value);
  } else if (key == "kc") {
    cfg.kc = parse_real(key, value);
  } else if (key == "center1" || key == "center2") {
    const auto [q, p] = parse_pair(key, value);
    (key == "center1" ? cfg.center1 : cfg.center2) = PhasePoint(q, p);
  } else if (key == "tmax") {
    cfg.t_max = parse_int(key, value);
  } else if (key == "otoc_b") {
    if (value == "p2d") cfg.otoc_b = OtocB::p2d;
    else if (value == "rho0") cfg.otoc_b = OtocB::rho0;
    else if (value == "both") cfg.otoc_b = OtocB::both;
    else bad_value(key, value);
  } else if (key == "outputs") {
    std::set<OutputKind> outs;
    for (auto item : split(value, ',')) {
      bool found = false;
      for (OutputKind o : {OutputKind::entropies, OutputKind::otocs, OutputKind::correlators, OutputKind::wigner_dump,
                           OutputKind::schmidt_spectrum}) {
        if (item == to_string(o)) {
          outs.insert(o);
          found = true;
        }
      }
      if (!found) bad_value(key, value);
    }
    cfg.outputs = std::move(outs);
  } else if (key == "fit_window") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) bad_value(key, value);
    cfg.fit_begin = parse_int(key, parts[0]);
    cfg.fit_end = parse_int(key, parts[1]);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ScenarioConfig::validate() const {
  if (n < 2) throw ConfigError("n must be >= 2");
  if (t_max < 0) throw ConfigError("tmax must be >= 0");
  if (fit_begin < 0 || fit_end <= fit_begin) throw ConfigError("fit_window must satisfy 0 <= begin < end");
  if (!std::isfinite(k) || !std::isfinite(kc)) throw ConfigError("k and kc must be finite");
}

CoupledSpec ScenarioConfig::coupled_spec() const {
  validate();
  const MapSpec h = MapSpec::hyperbolic(k), e = MapSpec::elliptic(k);
  switch (dynamics) {
    case Dynamics::ee: return {e, e, kc, HilbertDim(n)};
    case Dynamics::he: return {h, e, kc, HilbertDim(n)};
    case Dynamics::hh: return {h, h, kc, HilbertDim(n)};
  }
  throw ConfigError("unknown dynamics");
}

Overrides parse_key_values(std::string_view text) {
  Overrides out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
  for (const auto& [k, v] : parse_key_values(text)) apply_override(base, k, v);
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string echo_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "dynamics = " << to_string(cfg.dynamics) << '\n';
  os << "n = " << cfg.n << '\n';
  os << "k = " << format_double(cfg.k) << '\n';
  os << "kc = " << format_double(cfg.kc) << '\n';
  os << "center1 = " << format_double(cfg.center1.q()) << ',' << format_double(cfg.center1.p()) << '\n';
  os << "center2 = " << format_double(cfg.center2.q()) << ',' << format_double(cfg.center2.p()) << '\n';
  os << "tmax = " << cfg.t_max << '\n';
  os << "otoc_b = " << to_string(cfg.otoc_b) << '\n';
  os << "outputs = ";
  bool first = true;
  for (OutputKind o : cfg.outputs) {
    os << (first ? "" : ",") << to_string(o);
    first = false;
  }
  os << '\n';
  os << "fit_window = " << cfg.fit_begin << ',' << cfg.fit_end << '\n';
  return os.str();
}

}  // namespace catotoc::harness
