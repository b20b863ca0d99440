#include "sta_otto/thermo_strokes.hpp"

#include "sta_otto/errors.hpp"
#include "sta_otto/special_functions.hpp"

namespace sta_otto {

double thermal_mean_energy(double beta, double omega, double hbar) {
  if (!(beta > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
    throw DomainError("thermal state needs positive beta, omega and hbar");
  return 0.5 * hbar * omega * coth(0.5 * beta * hbar * omega);
}

ThermalOscillatorState ThermalOscillatorState::make(double beta, double omega, double hbar) {
  return {beta, omega, thermal_mean_energy(beta, omega, hbar)};
}

double stroke_work(double q_star, double omega_start, double omega_end, double beta, double hbar) {
  return 0.5 * hbar * (omega_end * q_star - omega_start) * coth(0.5 * beta * hbar * omega_start);
}

double hot_isochore_heat(double q_star_1, const EngineConfig& c) {
  return 0.5 * c.hbar * c.omega2 *
         (coth(0.5 * c.beta2 * c.hbar * c.omega2) - q_star_1 * coth(0.5 * c.beta1 * c.hbar * c.omega1));
}

double heat_sign_threshold(const EngineConfig& c) {
  return coth(0.5 * c.beta2 * c.hbar * c.omega2) / coth(0.5 * c.beta1 * c.hbar * c.omega1);
}

EngineCondition engine_condition(double work_total, double heat_hot) {
  EngineCondition out{true, {}};
  if (!(work_total < 0.0)) {
    out.is_engine = false;
    out.reasons.emplace_back("no net work produced");
  }
  if (!(heat_hot > 0.0)) {
    out.is_engine = false;
    out.reasons.emplace_back("heat pumped into hot reservoir");
  }
  return out;
}

}  // namespace sta_otto
