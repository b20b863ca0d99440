#include "sta_otto/engine_config.hpp"

#include <cmath>
#include <fmt/format.h>

namespace sta_otto {

std::vector<std::string> config_violations(const EngineConfig& c) {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back(fmt::format("{} must be positive (got {})", name, v));
  };
  positive(c.omega1, "omega1");
  positive(c.omega2, "omega2");
  positive(c.beta1, "beta1");
  positive(c.beta2, "beta2");
  positive(c.m, "m");
  positive(c.hbar, "hbar");
  if (!(c.beta1 > c.beta2))
    out.push_back(fmt::format("beta1 must exceed beta2 (cold bath colder than hot bath): {} <= {}",
                              c.beta1, c.beta2));
  if (!(c.omega2 > c.omega1))
    out.push_back(fmt::format("omega2 must exceed omega1 for a compression-first cycle: {} <= {}",
                              c.omega2, c.omega1));
  if (!(c.grid.tau_min > 0.0)) out.push_back("tau_min must be positive");
  if (!(c.grid.tau_max >= c.grid.tau_min)) out.push_back("tau_max must not be below tau_min");
  if (c.grid.count < 1) out.push_back("tau_count must be at least 1");
  if (c.grid.count == 1 && c.grid.tau_max != c.grid.tau_min)
    out.push_back("a single-point grid needs tau_min == tau_max");
  auto tol_ok = [](double v) { return v > 0.0 && v <= 1e-4; };
  if (!tol_ok(c.solver.rel_tol)) out.push_back("rel_tol must lie in (0, 1e-4]");
  if (!tol_ok(c.solver.abs_tol)) out.push_back("abs_tol must lie in (0, 1e-4]");
  if (!tol_ok(c.quad_tol)) out.push_back("quad_tol must lie in (0, 1e-4]");
  if (c.inversion_grid < 16) out.push_back("inversion grid needs at least 16 points");
  return out;
}

std::vector<double> tau_grid(const TauGrid& g) {
  std::vector<double> out;
  out.reserve(g.count);
  if (g.count == 1) {
    out.push_back(g.tau_min);
    return out;
  }
  const double n = static_cast<double>(g.count - 1);
  for (std::size_t i = 0; i < g.count; ++i) {
    const double f = static_cast<double>(i) / n;
    if (g.spacing == GridSpacing::Log) {
      out.push_back(std::exp(std::log(g.tau_min) + f * (std::log(g.tau_max) - std::log(g.tau_min))));
    } else {
      out.push_back(g.tau_min + f * (g.tau_max - g.tau_min));
    }
  }
  out.front() = g.tau_min;
  out.back() = g.tau_max;
  return out;
}

}  // namespace sta_otto
