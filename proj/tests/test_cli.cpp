#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sta_otto/cli/config_file.hpp"
#include "sta_otto/cli/csv.hpp"
#include "sta_otto/errors.hpp"

using namespace sta_otto;
using namespace sta_otto::cli;
namespace fs = std::filesystem;

namespace {

const fs::path reference_conf = fs::path(STA_OTTO_SOURCE_DIR) / "configs" / "reference.conf";

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("sta_otto_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

// Runs the tool with `args` (already shell-quoted) and an optional
// environment prefix such as "STA_OTTO_CONFIG=x".
Run run_tool(const std::string& args, const std::string& env = "env -u STA_OTTO_CONFIG") {
  const auto out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd = env + " '" + STA_OTTO_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string conf(const std::string& extra) {
  std::string text = slurp(reference_conf);
  std::istringstream in(extra);
  for (std::string line; std::getline(in, line);) {
    const std::string key = line.substr(0, line.find(' '));
    const auto at = text.find("\n" + key + " =");
    if (at != std::string::npos) text.erase(at + 1, text.find('\n', at + 1) - at);
    text += line + "\n";
  }
  return text;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config files") {
  const EngineConfig c = load_config(reference_conf);
  CHECK(same_config(c, EngineConfig{}));

  std::istringstream unknown("omega1 = 0.3\nomega3 = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream repeated("omega1 = 0.3\nomega1 = 0.4\n");
  CHECK_THROWS_AS(parse_config(repeated), ConfigError);
  std::istringstream bad("beta1 = half\n");
  CHECK_THROWS_WITH_AS(parse_config(bad, "x.conf"), "x.conf:1: beta1: not a number: 'half'", ConfigError);
  std::istringstream spacing("tau_spacing = cubic\n");
  CHECK_THROWS_AS(parse_config(spacing), ConfigError);
  std::istringstream no_eq("omega1 0.3\n");
  CHECK_THROWS_AS(parse_config(no_eq), ConfigError);
  CHECK_THROWS_AS(load_config(scratch() / "missing.conf"), ConfigError);

  EngineConfig odd;
  odd.omega1 = 0.1 + 0.2;
  odd.beta2 = 1.0 / 3.0;
  odd.grid = {0.02, 7.5, 17, GridSpacing::Linear};
  odd.strict = true;
  std::string text;
  for (const auto& line : format_config(odd)) text += line + "  # echoed\n";
  std::istringstream in(text);
  CHECK(same_config(parse_config(in), odd));
}

TEST_CASE("csv quoting and parsing") {
  CHECK(quote_field("plain") == "plain");
  CHECK(quote_field("a,b") == "\"a,b\"");
  CHECK(quote_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::istringstream in("# note\nx,y\n1,\"a,b\"\n2,\"line\nbreak \"\"q\"\"\"\n");
  const auto doc = read_csv(in);
  REQUIRE(doc.comments.size() == 1);
  CHECK(doc.header == std::vector<std::string>{"x", "y"});
  REQUIRE(doc.rows.size() == 2);
  CHECK(doc.rows[0][1] == "a,b");
  CHECK(doc.rows[1][1] == "line\nbreak \"q\"");
  std::istringstream ragged("x,y\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), ConfigError);
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("cycle command") {
  const auto r = run_tool("cycle --config '" + reference_conf.string() + "' --tau 100");
  CHECK(r.code == 0);
  CHECK(r.out.find("eta_ad                      = 0.680000000000\n") != std::string::npos);

  const auto env = run_tool("cycle --tau 100", "STA_OTTO_CONFIG='" + reference_conf.string() + "'");
  CHECK(env.code == 0);
  CHECK(env.out == r.out);

  const auto missing = run_tool("cycle --config '" + (scratch() / "nope.conf").string() + "' --tau 1");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open config file") != std::string::npos);

  const auto none = run_tool("cycle --tau 1");
  CHECK(none.code == 2);
  CHECK(none.err.find("STA_OTTO_CONFIG") != std::string::npos);

  const auto zero = run_tool("cycle --config '" + reference_conf.string() + "' --tau 0");
  CHECK(zero.code == 2);
  CHECK(zero.err.find("tau must be positive") != std::string::npos);

  CHECK(run_tool("bogus").code == 2);
  CHECK(run_tool("").code == 2);
  CHECK(run_tool("--help").code == 0);

  const auto csv = scratch() / "one.csv";
  CHECK(run_tool("cycle -c '" + reference_conf.string() + "' --tau 2 --csv '" + csv.string() + "'").code == 0);
  std::ifstream in(csv);
  const auto doc = read_csv(in);
  CHECK(doc.rows.size() == 1);
  CHECK(doc.rows[0][0] == "2");
}

TEST_CASE("strict mode turns trap inversion into a numerical failure") {
  const auto strict = write_file("strict.conf", conf("strict = true"));
  const auto r = run_tool("cycle -c '" + strict.string() + "' --tau 0.01");
  CHECK(r.code == 3);
  CHECK(r.err.find("compression stroke") != std::string::npos);

  const auto out = scratch() / "strict.csv";
  const auto s = run_tool("sweep -c '" + strict.string() + "' -o '" + out.string() + "'");
  CHECK(s.code == 3);
  std::ifstream in(out);
  const auto doc = read_csv(in);
  REQUIRE(doc.rows.size() == 200);
  const auto& first = doc.rows.front();
  CHECK(first[0] == "0.01");
  for (std::size_t i = 1; i + 1 < first.size(); ++i) CHECK(first[i].empty());
  CHECK(first.back().rfind("error: ", 0) == 0);
  CHECK(doc.rows.back().back().rfind("error", 0) == std::string::npos);
}

TEST_CASE("sweep CSV: manifest, columns, round trip, repeatability") {
  const auto a = scratch() / "a.csv", b = scratch() / "b.csv";
  CHECK(run_tool("sweep -c '" + reference_conf.string() + "' -o '" + a.string() + "' --threads 1").code == 0);
  CHECK(run_tool("sweep -c '" + reference_conf.string() + "' -o '" + b.string() + "' --threads 3").code == 0);
  CHECK(data_lines(slurp(a)) == data_lines(slurp(b)));

  std::ifstream in(a);
  const auto doc = read_csv(in);
  CHECK(same_config(manifest_config(doc), load_config(reference_conf)));
  REQUIRE(doc.header.size() == sweep_columns.size());
  for (std::size_t i = 0; i < sweep_columns.size(); ++i) CHECK(doc.header[i] == sweep_columns[i]);
  REQUIRE(doc.rows.size() == 200);

  std::size_t numbers = 0;
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      if (row[i].empty()) continue;
      double v = 0.0;
      const auto [end, ec] = std::from_chars(row[i].data(), row[i].data() + row[i].size(), v);
      REQUIRE(ec == std::errc{});
      REQUIRE(end == row[i].data() + row[i].size());
      CHECK(format_number(v) == row[i]);
      ++numbers;
    }
  }
  CHECK(numbers > 200 * 20);
}

TEST_CASE("validate command") {
  const auto ok = run_tool("validate -c '" + reference_conf.string() + "'");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS wronskian_constancy") != std::string::npos);

  const auto swapped = write_file("swapped.conf", conf("beta1 = 0.05\nbeta2 = 0.5"));
  const auto bad = run_tool("validate -c '" + swapped.string() + "'");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL config") != std::string::npos);

  const auto fast = write_file("fast.conf", conf("tau_min = 0.001\ntau_max = 0.01\ntau_count = 12"));
  const auto lenient = run_tool("validate -c '" + fast.string() + "'");
  CHECK(lenient.code == 0);
  CHECK(lenient.out.find("WARN trap_inversion") != std::string::npos);

  const auto fast_strict =
      write_file("fast_strict.conf", conf("tau_min = 0.001\ntau_max = 0.01\ntau_count = 12\nstrict = true"));
  CHECK(run_tool("validate -c '" + fast_strict.string() + "'").code == 1);
}

TEST_CASE("crossover command") {
  const auto r = run_tool("crossover -c '" + reference_conf.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("tau_star") != std::string::npos);
  const auto heat = run_tool("crossover -c '" + reference_conf.string() + "' --kind heat");
  CHECK(heat.code == 3);
  CHECK(run_tool("crossover -c '" + reference_conf.string() + "' --kind other").code == 2);
}

TEST_CASE("protocol-dump command") {
  const auto out = scratch() / "dump.csv";
  CHECK(run_tool("protocol-dump --omega-i 0.15 --omega-f 1 --tau 2 --points 11 -o '" + out.string() + "'").code == 0);
  std::ifstream in(out);
  const auto doc = read_csv(in);
  REQUIRE(doc.rows.size() == 11);
  CHECK(doc.header.front() == "t");
  CHECK(doc.rows.front()[6] == "1");
  CHECK(doc.rows.back()[0] == "2");

  const auto table = write_file("table.csv", "t,omega\n0,0.32\n0.4,0.6\n1,1\n");
  CHECK(run_tool("protocol-dump --table '" + table.string() + "' --points 5").code == 0);
  CHECK(run_tool("protocol-dump --tau -1").code == 2);
}
