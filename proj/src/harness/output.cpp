#include "catotoc/harness/output.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "catotoc/errors.hpp"

namespace catotoc::harness {

void write_timeseries(std::ostream& os, std::span<const TimeSeriesRecord> rows) {
  os << kTimeSeriesHeader << '\n';
  for (const auto& r : rows) {
    if (auto err = check_record(r)) throw NumericalHealthError("refusing to write row, " + *err);
    os << r.t;
    for (double x : {r.s_linear, r.s_vn, r.s_renyi2, r.otoc_xp, r.otoc_xrho, r.c2, r.c4_real, r.c4_imag,
                     r.otoc_xp_rescaled, r.otoc_xrho_rescaled})
      os << ',' << format_double(x);
    os << '\n';
  }
}

void write_metadata(std::ostream& os, const Metadata& md) {
  for (const auto& [k, v] : md) os << k << " = " << v << '\n';
}

void write_schmidt(std::ostream& os, std::span<const SchmidtRow> rows) {
  os << "t,wse";
  for (int i = 0; i < kSchmidtColumns; ++i) os << ",s" << i;
  os << '\n';
  for (const auto& r : rows) {
    os << r.t << ',' << format_double(r.wse);
    for (int i = 0; i < kSchmidtColumns; ++i)
      os << ',' << (i < static_cast<int>(r.coefficients.size()) ? format_double(r.coefficients[i]) : "0");
    os << '\n';
  }
}

void write_wigner(std::ostream& os, const WignerDump& d) {
  os << "# convention = " << kWignerConvention << '\n';
  os << "# n = " << d.grid.n << '\n';
  os << "# t = " << d.t << '\n';
  os << "# subsystem = " << d.subsystem << '\n';
  os << "# layout = rows q=0.." << d.grid.side() - 1 << ", columns p=0.." << d.grid.side() - 1
     << ", point (q/2n, p/2n)\n";
  const int s = d.grid.side();
  for (int q = 0; q < s; ++q) {
    for (int p = 0; p < s; ++p) os << (p ? "," : "") << format_double(d.grid.at(q, p));
    os << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

template <class F>
void write_with(const std::filesystem::path& path, F&& f) {
  std::ostringstream os;
  f(os);
  write_text_file(path, os.str());
}

}  // namespace

void write_scenario(const std::filesystem::path& dir, const ScenarioResult& r) {
  std::filesystem::create_directories(dir);
  write_with(dir / "timeseries.csv", [&](std::ostream& os) { write_timeseries(os, r.records); });
  write_with(dir / "metadata.txt", [&](std::ostream& os) { write_metadata(os, r.metadata); });
  write_text_file(dir / "config.txt", echo_config(r.config));
  if (r.config.wants(OutputKind::schmidt_spectrum))
    write_with(dir / "schmidt_spectrum.csv", [&](std::ostream& os) { write_schmidt(os, r.schmidt); });
  for (const auto& d : r.wigner) {
    const auto name = "wigner_t" + std::to_string(d.t) + "_sub" + std::to_string(d.subsystem) + ".txt";
    write_with(dir / name, [&](std::ostream& os) { write_wigner(os, d); });
  }
}

}  // namespace catotoc::harness
