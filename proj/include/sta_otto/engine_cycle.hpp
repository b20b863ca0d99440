#ifndef STA_OTTO_ENGINE_CYCLE_HPP
#define STA_OTTO_ENGINE_CYCLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sta_otto/engine_config.hpp"
#include "sta_otto/protocol.hpp"
#include "sta_otto/shortcut_cost.hpp"

namespace sta_otto {

struct StrokeResult {
  StrokeKind stroke;
  double q_star;                    // bare (non-shortcut) driving
  double work_actual;
  double work_adiabatic;
  double work_nonadiabatic_excess;  // work_actual - work_adiabatic >= 0
  double sa_cost;                   // time-averaged <H_SA>
  double bures_angle;
  std::optional<double> tau_qsl;    // empty when sa_cost <= 0
  InversionReport inversion;
  bool qsl_premise;                 // sa_cost >= hbar * bures_angle / tau
};

struct CycleMetrics {
  double tau;
  double tau_cycle;  // 2 tau
  StrokeResult compression;
  StrokeResult expansion;
  double q_star_1;
  double q_star_3;
  double eta_sa;
  double eta_na;
  double eta_ad;
  double p_sa;
  double p_na;
  double eta_qsl;
  std::optional<double> p_qsl;
  double q2_na;
  double q2_ad;
  double cost_total;
  bool is_engine_na;
  std::vector<std::string> flags;
};

/// Runs the four-stroke cycle with stroke duration tau. Each driven stroke
/// is a quintic ramp (omega1 -> omega2, then omega2 -> omega1). Numerical
/// failures are rethrown as StrokeFailure naming the stroke.
CycleMetrics run_cycle(const EngineConfig& config, double tau);

struct SweepRow {
  double tau;
  std::optional<CycleMetrics> metrics;
  std::string error;  // set iff metrics is empty
};

/// run_cycle over the configured grid, in grid order. Points may run on up
/// to `threads` workers (0 = hardware concurrency); results do not depend
/// on the thread count. A failing point yields a row with an error.
std::vector<SweepRow> sweep(const EngineConfig& config, unsigned threads = 0);

/// tau where eta_SA(tau) = eta_NA(tau), by Brent's method to 1e-6 relative.
/// Throws NoSignChange if the bracket does not straddle a crossing.
double find_efficiency_crossover(const EngineConfig& config, double tau_lo, double tau_hi);

/// tau where the bare compression stroke reaches Q*_1 = heat_sign_threshold().
double find_heat_sign_crossover(const EngineConfig& config, double tau_lo, double tau_hi);

}  // namespace sta_otto

#endif  // STA_OTTO_ENGINE_CYCLE_HPP
