#ifndef STA_OTTO_SHORTCUT_COST_HPP
#define STA_OTTO_SHORTCUT_COST_HPP

// Energetics of the local counterdiabatic (superadiabatic) driving term.

#include <cstddef>
#include <vector>

#include "sta_otto/protocol.hpp"
#include "sta_otto/thermo_strokes.hpp"

namespace sta_otto {

enum class StrokeKind { Compression, Expansion };

/// <H_SA(t)> = (omega_t / omega_i) <H(0)> [-omega_dot^2 / (4 omega^4) + omega_ddot / (4 omega^3)],
/// omega_i = initial.omega. Signed; vanishes where omega_dot = omega_ddot = 0.
double sa_energy_instant(const ProtocolSample& sample, const ThermalOscillatorState& initial);

/// (1 / tau) * integral of sa_energy_instant over the stroke. Throws
/// QuadratureFailure if quad_tol (in (0, 1e-4]) cannot be met, and
/// DomainError if initial.omega is not the protocol's starting frequency.
double sa_cost_time_average(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                            double quad_tol = 1e-10);

struct CostProfile {
  StrokeKind stroke;
  std::vector<double> times;
  std::vector<double> instantaneous;
  double time_average;
};

CostProfile sa_cost_profile(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                            StrokeKind stroke, std::size_t points, double quad_tol = 1e-10);

/// Q*_LCD(t) = 1 - omega_dot^2 / (4 omega^4) + omega_ddot / (4 omega^3).
double q_star_lcd_instant(const ProtocolSample& sample);

/// The older, uncorrected expression 1 + omega_dot^2 / (8 omega^4), kept for
/// side-by-side comparison.
double q_star_lcd_uncorrected(const ProtocolSample& sample);

/// <H_LCD(t)> = Q*_LCD(t) (omega_t / omega_0) <H(0)>.
double lcd_mean_energy(const FrequencyProtocol& protocol, const ThermalOscillatorState& initial,
                       double t);

}  // namespace sta_otto

#endif  // STA_OTTO_SHORTCUT_COST_HPP
