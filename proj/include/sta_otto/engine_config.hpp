#ifndef STA_OTTO_ENGINE_CONFIG_HPP
#define STA_OTTO_ENGINE_CONFIG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sta_otto/oscillator_dynamics.hpp"

namespace sta_otto {

enum class GridSpacing { Linear, Log };

struct TauGrid {
  double tau_min = 0.01;
  double tau_max = 10.0;
  std::size_t count = 200;
  GridSpacing spacing = GridSpacing::Log;
};

/// Physical parameters and numerical settings of the engine. Defaults are
/// the reference working point omega1 = 0.32, omega2 = 1, beta1 = 0.5,
/// beta2 = 0.05 in units hbar = m = 1.
struct EngineConfig {
  double omega1 = 0.32;
  double omega2 = 1.0;
  double beta1 = 0.5;  // cold bath
  double beta2 = 0.05;  // hot bath
  double m = 1.0;  // cancels from every observable; kept for completeness
  double hbar = 1.0;
  TauGrid grid;
  SolverTolerances solver;
  double quad_tol = 1e-10;
  bool strict = false;
  std::size_t inversion_grid = 256;
};

/// Human-readable list of violated invariants; empty when the config is
/// usable for a compression-first engine cycle.
std::vector<std::string> config_violations(const EngineConfig& config);

/// Sweep abscissa in grid order.
std::vector<double> tau_grid(const TauGrid& grid);

}  // namespace sta_otto

#endif  // STA_OTTO_ENGINE_CONFIG_HPP
