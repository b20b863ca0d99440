#include "sta_otto/cli/config_file.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <set>

#include "sta_otto/errors.hpp"

namespace sta_otto::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Location {
  const std::string& source;
  std::size_t line;
  std::string_view key;
};

[[noreturn]] void fail(const Location& at, std::string_view what) {
  throw ConfigError(fmt::format("{}:{}: {}: {}", at.source, at.line, at.key, what));
}

double parse_double(std::string_view v, const Location& at) {
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size()) fail(at, fmt::format("not a number: '{}'", v));
  return out;
}

std::size_t parse_count(std::string_view v, const Location& at) {
  std::size_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size())
    fail(at, fmt::format("not a non-negative integer: '{}'", v));
  return out;
}

bool parse_bool(std::string_view v, const Location& at) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(at, fmt::format("expected true or false, got '{}'", v));
}

GridSpacing parse_spacing(std::string_view v, const Location& at) {
  if (v == "log") return GridSpacing::Log;
  if (v == "linear") return GridSpacing::Linear;
  fail(at, fmt::format("expected linear or log, got '{}'", v));
}

}  // namespace

EngineConfig parse_config(std::istream& in, const std::string& source) {
  EngineConfig c;
  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line_no));
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (const auto hash = value.find('#'); hash != std::string_view::npos) value = trim(value.substr(0, hash));
    const Location at{source, line_no, key};
    if (value.empty()) fail(at, "missing value");
    if (!seen.emplace(key).second) fail(at, "repeated key");

    if (key == "omega1") c.omega1 = parse_double(value, at);
    else if (key == "omega2") c.omega2 = parse_double(value, at);
    else if (key == "beta1") c.beta1 = parse_double(value, at);
    else if (key == "beta2") c.beta2 = parse_double(value, at);
    else if (key == "m") c.m = parse_double(value, at);
    else if (key == "hbar") c.hbar = parse_double(value, at);
    else if (key == "tau_min") c.grid.tau_min = parse_double(value, at);
    else if (key == "tau_max") c.grid.tau_max = parse_double(value, at);
    else if (key == "tau_count") c.grid.count = parse_count(value, at);
    else if (key == "tau_spacing") c.grid.spacing = parse_spacing(value, at);
    else if (key == "rel_tol") c.solver.rel_tol = parse_double(value, at);
    else if (key == "abs_tol") c.solver.abs_tol = parse_double(value, at);
    else if (key == "quad_tol") c.quad_tol = parse_double(value, at);
    else if (key == "strict") c.strict = parse_bool(value, at);
    else fail(at, "unknown key");
  }
  return c;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  return parse_config(in, path.string());
}

std::vector<std::string> format_config(const EngineConfig& c) {
  auto num = [](std::string_view key, double v) { return fmt::format("{} = {:.17g}", key, v); };
  return {num("omega1", c.omega1),
          num("omega2", c.omega2),
          num("beta1", c.beta1),
          num("beta2", c.beta2),
          num("m", c.m),
          num("hbar", c.hbar),
          num("tau_min", c.grid.tau_min),
          num("tau_max", c.grid.tau_max),
          fmt::format("tau_count = {}", c.grid.count),
          fmt::format("tau_spacing = {}", c.grid.spacing == GridSpacing::Log ? "log" : "linear"),
          num("rel_tol", c.solver.rel_tol),
          num("abs_tol", c.solver.abs_tol),
          num("quad_tol", c.quad_tol),
          fmt::format("strict = {}", c.strict)};
}

bool same_config(const EngineConfig& a, const EngineConfig& b) {
  return a.omega1 == b.omega1 && a.omega2 == b.omega2 && a.beta1 == b.beta1 && a.beta2 == b.beta2 &&
         a.m == b.m && a.hbar == b.hbar && a.grid.tau_min == b.grid.tau_min &&
         a.grid.tau_max == b.grid.tau_max && a.grid.count == b.grid.count &&
         a.grid.spacing == b.grid.spacing && a.solver.rel_tol == b.solver.rel_tol &&
         a.solver.abs_tol == b.solver.abs_tol && a.quad_tol == b.quad_tol && a.strict == b.strict &&
         a.inversion_grid == b.inversion_grid;
}

}  // namespace sta_otto::cli
