#include "sta_otto/shortcut_cost.hpp"

#include <cmath>
#include <fmt/format.h>

#include "sta_otto/errors.hpp"
#include "sta_otto/quadrature.hpp"

namespace sta_otto {

namespace {

// -omega_dot^2 / (4 omega^4) + omega_ddot / (4 omega^3)
double sa_bracket(const ProtocolSample& s) {
  const double w2 = s.omega * s.omega;
  return (-s.omega_dot * s.omega_dot / w2 + s.omega_ddot / s.omega) / (4.0 * w2);
}

void require_matching_start(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial) {
  const double w = protocol.omega_initial();
  if (std::fabs(initial.omega - w) > 1e-12 * w)
    throw DomainError(fmt::format("initial state frequency {} differs from protocol start {}",
                                  initial.omega, w));
}

}  // namespace

double sa_energy_instant(const ProtocolSample& sample, const ThermalOscillatorState& initial) {
  return sample.omega / initial.omega * initial.mean_energy * sa_bracket(sample);
}

double sa_cost_time_average(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                            double quad_tol) {
  if (!(quad_tol > 0.0 && quad_tol <= 1e-4))
    throw ConfigError(fmt::format("quad_tol must lie in (0, 1e-4] (got {})", quad_tol));
  require_matching_start(protocol, initial);
  if (protocol.is_constant()) return 0.0;
  const double tau = protocol.duration();
  const auto result = numerics::integrate_adaptive(
      [&](double t) { return sa_energy_instant(protocol.sample(t), initial); }, 0.0, tau, quad_tol);
  return result.value / tau;
}

CostProfile sa_cost_profile(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                            StrokeKind stroke, std::size_t points, double quad_tol) {
  if (points < 2) throw ConfigError("cost profile needs at least two points");
  CostProfile out{stroke, {}, {}, sa_cost_time_average(protocol, initial, quad_tol)};
  out.times.reserve(points);
  out.instantaneous.reserve(points);
  const double tau = protocol.duration();
  for (std::size_t i = 0; i < points; ++i) {
    const double t = i + 1 == points ? tau : tau * static_cast<double>(i) / static_cast<double>(points - 1);
    out.times.push_back(t);
    out.instantaneous.push_back(sa_energy_instant(protocol.sample(t), initial));
  }
  return out;
}

double q_star_lcd_instant(const ProtocolSample& sample) { return 1.0 + sa_bracket(sample); }

double q_star_lcd_uncorrected(const ProtocolSample& s) {
  const double w2 = s.omega * s.omega;
  return 1.0 + s.omega_dot * s.omega_dot / (8.0 * w2 * w2);
}

double lcd_mean_energy(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                       double t) {
  require_matching_start(protocol, initial);
  const ProtocolSample s = protocol.sample(t);
  return q_star_lcd_instant(s) * (s.omega / initial.omega) * initial.mean_energy;
}

}  // namespace sta_otto
