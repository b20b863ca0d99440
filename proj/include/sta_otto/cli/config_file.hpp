#ifndef STA_OTTO_CLI_CONFIG_FILE_HPP
#define STA_OTTO_CLI_CONFIG_FILE_HPP

// Flat `key = value` configuration files.
//
//   # comment
//   omega1 = 0.32
//   tau_spacing = log
//
// Recognised keys: omega1, omega2, beta1, beta2, m, hbar, tau_min, tau_max,
// tau_count, tau_spacing (linear|log), rel_tol, abs_tol, quad_tol,
// strict (true|false). Missing keys keep their EngineConfig defaults.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "sta_otto/engine_config.hpp"

namespace sta_otto::cli {

/// Throws ConfigError naming `source` and the line on unknown or repeated
/// keys and malformed values. Does not check physical invariants.
EngineConfig parse_config(std::istream& in, const std::string& source = "<config>");

EngineConfig load_config(const std::filesystem::path& path);

/// One `key = value` line per key, numbers at 17 significant digits so that
/// parse_config(format_config(c)) == c.
std::vector<std::string> format_config(const EngineConfig& config);

bool same_config(const EngineConfig& a, const EngineConfig& b);

}  // namespace sta_otto::cli

#endif  // STA_OTTO_CLI_CONFIG_FILE_HPP
