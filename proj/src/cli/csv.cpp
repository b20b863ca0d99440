#include "sta_otto/cli/csv.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <sstream>

#include "sta_otto/cli/config_file.hpp"
#include "sta_otto/errors.hpp"

namespace sta_otto::cli {

namespace {

constexpr std::string_view config_prefix = " config: ";

std::string utc_timestamp() {
  std::time_t seconds = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    long long value = 0;
    const std::string_view s(epoch);
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && end == s.data() + s.size()) seconds = static_cast<std::time_t>(value);
  }
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", tm);
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

RunManifest make_manifest(const EngineConfig& config, const std::vector<std::string>& argv) {
  std::string command;
  for (const auto& a : argv) {
    if (!command.empty()) command += ' ';
    command += a;
  }
  return {STA_OTTO_VERSION, command, utc_timestamp(), config};
}

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> sweep_fields(const SweepRow& row) {
  std::vector<std::string> f;
  f.reserve(sweep_columns.size());
  f.push_back(format_number(row.tau));
  if (!row.metrics) {
    f.resize(sweep_columns.size() - 1);
    f.push_back("error: " + row.error);
    return f;
  }
  const CycleMetrics& m = *row.metrics;
  const StrokeResult& s1 = m.compression;
  const StrokeResult& s3 = m.expansion;
  for (double v : {m.q_star_1, m.q_star_3, s1.work_nonadiabatic_excess, s3.work_nonadiabatic_excess,
                   s1.work_adiabatic, s3.work_adiabatic, m.q2_na, m.q2_ad, s1.sa_cost, s3.sa_cost, m.eta_sa,
                   m.eta_na, m.eta_ad, m.p_sa, m.p_na, m.eta_qsl})
    f.push_back(format_number(v));
  f.push_back(optional_number(m.p_qsl));
  f.push_back(format_number(s1.bures_angle));
  f.push_back(format_number(s3.bures_angle));
  f.push_back(optional_number(s1.tau_qsl));
  f.push_back(optional_number(s3.tau_qsl));
  std::string flags;
  for (const auto& flag : m.flags) {
    if (!flags.empty()) flags += ';';
    flags += flag;
  }
  f.push_back(flags);
  return f;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  const auto& g = m.config.grid;
  out << "# sta-otto " << m.version << '\n';
  out << "# command: " << m.command_line << '\n';
  out << "# timestamp: " << m.timestamp << '\n';
  out << fmt::format("# grid: {} {:.17g} .. {:.17g}, {} points\n",
                     g.spacing == GridSpacing::Log ? "log" : "linear", g.tau_min, g.tau_max, g.count);
  out << fmt::format("# solver: rel_tol {:.17g}, abs_tol {:.17g}, quad_tol {:.17g}\n",
                     m.config.solver.rel_tol, m.config.solver.abs_tol, m.config.quad_tol);
  for (const auto& line : format_config(m.config)) out << '#' << config_prefix << line << '\n';
}

void write_sweep_csv(std::ostream& out, const RunManifest& manifest, const std::vector<SweepRow>& rows) {
  write_manifest(out, manifest);
  for (std::size_t i = 0; i < sweep_columns.size(); ++i) out << (i ? "," : "") << sweep_columns[i];
  out << '\n';
  for (const auto& row : rows) {
    const auto fields = sweep_fields(row);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << quote_field(fields[i]);
    out << '\n';
  }
}

CsvDocument read_csv(std::istream& in) {
  CsvDocument doc;
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t pos = 0;

  while (pos < text.size() && text[pos] == '#') {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos + 1, end - pos - 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    doc.comments.push_back(std::move(line));
    pos = end + 1;
  }

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (quoted) {
      if (ch == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      if (field_started) throw ConfigError("csv: stray quote inside unquoted field");
      quoted = field_started = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
      // CRLF: handled at the '\n'.
    } else if (ch == '\n') {
      end_record();
    } else {
      field += ch;
      field_started = true;
    }
  }
  if (quoted) throw ConfigError("csv: unterminated quoted field");
  if (field_started || !record.empty()) end_record();

  if (records.empty()) throw ConfigError("csv: missing header");
  doc.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != doc.header.size())
      throw ConfigError(fmt::format("csv: row {} has {} fields, header has {}", i, records[i].size(),
                                    doc.header.size()));
    doc.rows.push_back(std::move(records[i]));
  }
  return doc;
}

EngineConfig manifest_config(const CsvDocument& doc) {
  std::ostringstream lines;
  bool any = false;
  for (const auto& c : doc.comments) {
    if (c.rfind(config_prefix, 0) == 0) {
      lines << c.substr(config_prefix.size()) << '\n';
      any = true;
    }
  }
  if (!any) throw ConfigError("csv: no configuration echo in the manifest");
  std::istringstream in(lines.str());
  return parse_config(in, "<manifest>");
}

}  // namespace sta_otto::cli
