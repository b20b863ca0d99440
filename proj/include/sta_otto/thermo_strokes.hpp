#ifndef STA_OTTO_THERMO_STROKES_HPP
#define STA_OTTO_THERMO_STROKES_HPP

#include <string>
#include <vector>

#include "sta_otto/engine_config.hpp"

namespace sta_otto {

/// Thermal state of an oscillator at inverse temperature beta and
/// frequency omega; mean_energy = (hbar omega / 2) coth(beta hbar omega / 2).
struct ThermalOscillatorState {
  double beta;
  double omega;
  double mean_energy;

  static ThermalOscillatorState make(double beta, double omega, double hbar);
};

double thermal_mean_energy(double beta, double omega, double hbar);

/// (hbar / 2)(omega_end Q* - omega_start) coth(beta hbar omega_start / 2).
/// With q_star = 1 this is the adiabatic work of the stroke.
double stroke_work(double q_star, double omega_start, double omega_end, double beta, double hbar);

/// Heat taken from the hot bath:
/// (hbar omega2 / 2)[coth(beta2 hbar omega2 / 2) - Q*_1 coth(beta1 hbar omega1 / 2)].
double hot_isochore_heat(double q_star_1, const EngineConfig& config);

/// Q*_1 above which the hot isochore heat turns negative.
double heat_sign_threshold(const EngineConfig& config);

struct EngineCondition {
  bool is_engine;
  std::vector<std::string> reasons;
};

/// Engine iff net work is negative (work is produced) and heat is drawn
/// from the hot bath.
EngineCondition engine_condition(double work_total, double heat_hot);

}  // namespace sta_otto

#endif  // STA_OTTO_THERMO_STROKES_HPP
