#ifndef STA_OTTO_CLI_CSV_HPP
#define STA_OTTO_CLI_CSV_HPP

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sta_otto/engine_config.hpp"
#include "sta_otto/engine_cycle.hpp"

namespace sta_otto::cli {

inline constexpr std::array<std::string_view, 23> sweep_columns{
    "tau",    "q_star_1", "q_star_3", "w1_na",   "w3_na",  "w1_ad",  "w3_ad",   "q2_na",
    "q2_ad",  "cost1",    "cost3",    "eta_sa",  "eta_na", "eta_ad", "p_sa",    "p_na",
    "eta_qsl", "p_qsl",   "bures1",   "bures3",  "tqsl1",  "tqsl3",  "flags"};

/// Provenance written as '#' comment lines above the CSV header.
struct RunManifest {
  std::string version;
  std::string command_line;
  std::string timestamp;  // UTC, ISO 8601
  EngineConfig config;
};

/// Manifest for the current invocation. The timestamp honours
/// SOURCE_DATE_EPOCH when set.
RunManifest make_manifest(const EngineConfig& config, const std::vector<std::string>& argv);

/// 12 significant digits, '.' decimal point.
std::string format_number(double value);

/// RFC 4180 quoting: fields containing a comma, quote or line break are
/// wrapped in quotes with embedded quotes doubled.
std::string quote_field(std::string_view field);

std::vector<std::string> sweep_fields(const SweepRow& row);

void write_manifest(std::ostream& out, const RunManifest& manifest);
void write_sweep_csv(std::ostream& out, const RunManifest& manifest, const std::vector<SweepRow>& rows);

struct CsvDocument {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Splits an RFC 4180 document; quoted fields may span lines. Leading
/// '#' lines are collected as comments. Throws ConfigError on malformed
/// quoting or ragged rows.
CsvDocument read_csv(std::istream& in);

/// Recovers the configuration echoed in the manifest comments.
EngineConfig manifest_config(const CsvDocument& doc);

}  // namespace sta_otto::cli

#endif  // STA_OTTO_CLI_CSV_HPP
