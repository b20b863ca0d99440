#include "sta_otto/engine_cycle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <thread>

#include "sta_otto/errors.hpp"
#include "sta_otto/oscillator_dynamics.hpp"
#include "sta_otto/qsl_bounds.hpp"
#include "sta_otto/roots.hpp"
#include "sta_otto/thermo_strokes.hpp"

namespace sta_otto {

namespace {

const char* stroke_name(StrokeKind k) { return k == StrokeKind::Compression ? "compression" : "expansion"; }

StrokeResult run_stroke(const EngineConfig& c, StrokeKind kind, double tau) {
  const bool compression = kind == StrokeKind::Compression;
  const double w_start = compression ? c.omega1 : c.omega2;
  const double w_end = compression ? c.omega2 : c.omega1;
  const double beta = compression ? c.beta1 : c.beta2;
  try {
    const auto protocol = FrequencyProtocol::polynomial_ramp(w_start, w_end, tau);
    const InversionReport inversion = check_trap_inversion(protocol, c.inversion_grid);
    if (inversion.inverted && c.strict)
      throw TrapInversionError(fmt::format("trap inversion (min Omega^2 = {} at t = {})",
                                           inversion.min_omega_eff_sq, inversion.argmin_t));

    StrokeResult r{};
    r.stroke = kind;
    r.inversion = inversion;
    r.q_star = final_adiabaticity(protocol, c.solver);
    r.work_actual = stroke_work(r.q_star, w_start, w_end, beta, c.hbar);
    r.work_adiabatic = stroke_work(1.0, w_start, w_end, beta, c.hbar);
    r.work_nonadiabatic_excess = r.work_actual - r.work_adiabatic;

    const auto initial = ThermalOscillatorState::make(beta, w_start, c.hbar);
    r.sa_cost = sa_cost_time_average(protocol, initial, c.quad_tol);
    // The shortcut ends in the adiabatic state, so the Bures angle is taken
    // with aligned covariances (Q* = 1).
    r.bures_angle = bures_angle(gaussian_fidelity(beta, w_start, w_end, 1.0, c.hbar));
    if (r.sa_cost > 0.0) r.tau_qsl = qsl_time(r.bures_angle, r.sa_cost, c.hbar);
    r.qsl_premise = r.sa_cost >= c.hbar * r.bures_angle / tau;
    return r;
  } catch (const StrokeFailure&) {
    throw;
  } catch (const NumericalError& e) {
    throw StrokeFailure(stroke_name(kind), e.what());
  }
}

}  // namespace

CycleMetrics run_cycle(const EngineConfig& c, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  const auto violations = config_violations(c);
  if (!violations.empty()) throw ConfigError(violations.front());

  CycleMetrics m{};
  m.tau = tau;
  m.tau_cycle = 2.0 * tau;
  m.compression = run_stroke(c, StrokeKind::Compression, tau);
  m.expansion = run_stroke(c, StrokeKind::Expansion, tau);
  m.q_star_1 = m.compression.q_star;
  m.q_star_3 = m.expansion.q_star;

  const double w_na = m.compression.work_actual + m.expansion.work_actual;
  const double w_ad = m.compression.work_adiabatic + m.expansion.work_adiabatic;
  m.q2_na = hot_isochore_heat(m.q_star_1, c);
  m.q2_ad = hot_isochore_heat(1.0, c);
  m.cost_total = m.compression.sa_cost + m.expansion.sa_cost;

  if (m.q2_na == 0.0 || m.q2_ad == 0.0) throw NumericalError("hot-bath heat vanishes; efficiency undefined");
  m.eta_na = -w_na / m.q2_na;
  m.eta_ad = -w_ad / m.q2_ad;
  const double sa_input = m.q2_ad + m.cost_total;
  if (sa_input == 0.0) throw NumericalError("superadiabatic energy input vanishes");
  m.eta_sa = -w_ad / sa_input;
  m.p_sa = -w_ad / m.tau_cycle;
  m.p_na = -w_na / m.tau_cycle;

  m.eta_qsl = efficiency_bound(w_ad, m.q2_ad, m.compression.bures_angle + m.expansion.bures_angle,
                               tau, c.hbar);
  if (m.compression.tau_qsl && m.expansion.tau_qsl)
    m.p_qsl = power_bound(w_ad, *m.compression.tau_qsl, *m.expansion.tau_qsl);

  const EngineCondition na = engine_condition(w_na, m.q2_na);
  m.is_engine_na = na.is_engine;
  if (m.compression.inversion.inverted) m.flags.emplace_back("trap_inversion_1");
  if (m.expansion.inversion.inverted) m.flags.emplace_back("trap_inversion_3");
  if (!na.is_engine) {
    m.flags.emplace_back("na_not_engine");
    if (m.q2_na <= 0.0) m.flags.emplace_back("heat_pumped_into_hot_reservoir");
  }
  if (!m.compression.qsl_premise) m.flags.emplace_back("qsl_premise_fail_1");
  if (!m.expansion.qsl_premise) m.flags.emplace_back("qsl_premise_fail_3");
  if (m.compression.sa_cost < 0.0) m.flags.emplace_back("negative_cost_1");
  if (m.expansion.sa_cost < 0.0) m.flags.emplace_back("negative_cost_3");
  return m;
}

std::vector<SweepRow> sweep(const EngineConfig& config, unsigned threads) {
  const auto violations = config_violations(config);
  if (!violations.empty()) throw ConfigError(violations.front());
  const std::vector<double> grid = tau_grid(config.grid);
  std::vector<SweepRow> rows(grid.size());

  auto evaluate = [&](std::size_t i) {
    rows[i].tau = grid[i];
    try {
      rows[i].metrics = run_cycle(config, grid[i]);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) evaluate(i);
    });
  }
  workers.clear();  // joins
  return rows;
}

double find_efficiency_crossover(const EngineConfig& config, double tau_lo, double tau_hi) {
  auto gap = [&](double tau) {
    const CycleMetrics m = run_cycle(config, tau);
    return m.eta_sa - m.eta_na;
  };
  return numerics::brent_root(gap, tau_lo, tau_hi, 1e-6).root;
}

double find_heat_sign_crossover(const EngineConfig& config, double tau_lo, double tau_hi) {
  const double threshold = heat_sign_threshold(config);
  auto excess = [&](double tau) {
    const auto protocol = FrequencyProtocol::polynomial_ramp(config.omega1, config.omega2, tau);
    return final_adiabaticity(protocol, config.solver) - threshold;
  };
  return numerics::brent_root(excess, tau_lo, tau_hi, 1e-6).root;
}

}  // namespace sta_otto
