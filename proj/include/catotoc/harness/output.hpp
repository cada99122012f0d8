#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include "catotoc/harness/scenario.hpp"

namespace catotoc::harness {

inline constexpr std::string_view kTimeSeriesHeader =
    "t,s_linear,s_vn,s_renyi2,otoc_xp,otoc_xrho,c2,c4_real,c4_imag,otoc_xp_rescaled,otoc_xrho_rescaled";

/// Rejects rows that fail check_record with NumericalHealthError.
void write_timeseries(std::ostream& os, std::span<const TimeSeriesRecord> rows);
void write_metadata(std::ostream& os, const Metadata& md);
void write_schmidt(std::ostream& os, std::span<const SchmidtRow> rows);
/// '#'-prefixed header, then 2n rows (q index) of 2n values (p index).
void write_wigner(std::ostream& os, const WignerDump& dump);

/// timeseries.csv, metadata.txt, config.txt and any optional dumps.
void write_scenario(const std::filesystem::path& dir, const ScenarioResult& result);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace catotoc::harness
