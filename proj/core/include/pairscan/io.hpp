#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pairscan/series.hpp"
#include "pairscan/symbols.hpp"

namespace pairscan {

// Series files: plain text, one decimal real per line, no header.
// Values are written with 17 significant digits so load(save(x)) == x.
TimeSeries load_series(const std::string& path);
void save_series(const TimeSeries& series, const std::string& path);

// Matrix files: optional first line "# alphabet=N", then one subject row per
// line of whitespace-separated integers. Without the header the alphabet is
// inferred as max(entry)+1 (at least 2). Parse errors name the line.
SymbolMatrix load_matrix(const std::string& path);
void save_matrix(const SymbolMatrix& matrix, const std::string& path);

// One scan result. pair indices are 1-based in serialized reports.
// The optional fields are populated by the two-locus family.
struct Report {
  std::string algorithm;
  std::string params;   // re-runnable command line: subcommand + resolved flags
  std::string dataset;  // input path or generator description
  std::uint64_t pair_index_1 = 0;
  std::uint64_t pair_index_2 = 0;
  double distance_or_matches = 0.0;
  std::uint64_t pairs_examined = 0;
  std::uint64_t iterations = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> delta;
  std::optional<std::string> direction;
  std::optional<std::uint64_t> recovery_iteration;
  std::optional<std::uint64_t> recovery_candidates;
};

// JSON object (single run) or array (multi-trial runs). CSV carries the same
// columns with values rendered by the same formatter, so the two formats
// always agree byte-for-byte on shared fields.
std::string report_to_json(const Report& report);
std::string reports_to_json(const std::vector<Report>& reports);
std::string reports_to_csv(const std::vector<Report>& reports);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pairscan
