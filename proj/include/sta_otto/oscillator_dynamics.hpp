#ifndef STA_OTTO_OSCILLATOR_DYNAMICS_HPP
#define STA_OTTO_OSCILLATOR_DYNAMICS_HPP

// Classical and Ermakov dynamics of the parametric oscillator
// f'' + w(t)^2 f = 0, and the Husimi adiabaticity parameter Q*(t) built
// from it. Three independent routes to Q* are provided (fundamental pair,
// Ermakov scaling factor, second-moment equations) so they can be checked
// against each other.

#include <cstddef>

#include "sta_otto/ode.hpp"
#include "sta_otto/protocol.hpp"

namespace sta_otto {

struct SolverTolerances {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

/// Which frequency drives the oscillator: the bare schedule omega(t), or
/// the local counterdiabatic Omega(t) (Omega^2 may go negative).
enum class Driving { Bare, LocalCounterdiabatic };

struct LinearPairState {
  double x;  // X(0) = 0, X'(0) = 1
  double x_dot;
  double y;  // Y(0) = 1, Y'(0) = 0
  double y_dot;
};

class LinearPairSolution {
 public:
  LinearPairState at(double t) const;
  /// Y X' - Y' X; identically 1 for an exact solution.
  double wronskian(double t) const;
  /// Squared frequency of the equation actually integrated.
  double frequency_squared(double t) const;

  const FrequencyProtocol& protocol() const { return protocol_; }
  Driving driving() const { return driving_; }
  double duration() const { return protocol_.duration(); }
  std::size_t step_count() const { return trajectory_.step_count(); }

 private:
  friend LinearPairSolution solve_linear_pair(const FrequencyProtocol&, const SolverTolerances&,
                                              Driving);
  LinearPairSolution(FrequencyProtocol protocol, Driving driving,
                     numerics::DenseTrajectory<4> trajectory);

  FrequencyProtocol protocol_;
  Driving driving_;
  numerics::DenseTrajectory<4> trajectory_;
};

/// Integrates both fundamental solutions over [0, duration]. Tolerances
/// must lie in (0, 1e-4]. Throws SolverFailure on step-size underflow.
LinearPairSolution solve_linear_pair(const FrequencyProtocol& protocol,
                                     const SolverTolerances& tolerances = {},
                                     Driving driving = Driving::Bare);

struct ErmakovPoint {
  double b;
  double b_dot;
};

/// b(t) = sqrt(Y^2 + omega0^2 X^2): the Ermakov scaling factor with
/// b(0) = 1, b'(0) = 0.
class ErmakovSolution {
 public:
  ErmakovSolution(LinearPairSolution pair, double omega0);

  ErmakovPoint at(double t) const;
  /// b'' + w^2 b - omega0^2 / b^3, with b'' taken from the differentiated
  /// closed form and w^2 the frequency the pair was integrated with.
  double residual(double t) const;
  double omega0() const { return omega0_; }
  const LinearPairSolution& pair() const { return pair_; }

 private:
  LinearPairSolution pair_;
  double omega0_;
};

ErmakovSolution ermakov_from_linear(const LinearPairSolution& pair, double omega0);

/// Husimi form: [omega0^2 (w^2 X^2 + X'^2) + (w^2 Y^2 + Y'^2)] / (2 omega0 w),
/// with w = omega_t the instantaneous reference frequency.
double adiabaticity_parameter(const LinearPairSolution& pair, double omega0, double omega_t,
                              double t);

/// Ermakov form: (omega0^2 / b^2 + b'^2 + w^2 b^2) / (2 omega0 w).
double adiabaticity_parameter_ermakov(const ErmakovSolution& ermakov, double omega_t, double t);

/// Second moments <x^2>, <p^2>, <{x,p}>/2 of a state that starts thermal at
/// omega(0), propagated by their own linear ODE (units m = hbar = 1,
/// normalised so the initial energy is omega(0) / 2).
class SecondMomentSolution {
 public:
  struct Moments {
    double xx;
    double pp;
    double xp;
  };
  Moments at(double t) const;
  /// <H0(t)> / ((omega_t / omega(0)) <H(0)>).
  double q_star(double t, double omega_t) const;
  double omega0() const { return omega0_; }

 private:
  friend SecondMomentSolution solve_second_moments(const FrequencyProtocol&,
                                                   const SolverTolerances&, Driving);
  SecondMomentSolution(double omega0, numerics::DenseTrajectory<3> trajectory)
      : omega0_(omega0), trajectory_(std::move(trajectory)) {}

  double omega0_;
  numerics::DenseTrajectory<3> trajectory_;
};

SecondMomentSolution solve_second_moments(const FrequencyProtocol& protocol,
                                          const SolverTolerances& tolerances = {},
                                          Driving driving = Driving::Bare);

/// Q*(tau) reached when the stroke is driven with the LCD frequency Omega(t),
/// measured against the endpoint frequencies omega_i, omega_f.
double lcd_final_adiabaticity(const FrequencyProtocol& protocol,
                              const SolverTolerances& tolerances = {});

/// Q*(tau) of the bare (non-shortcut) stroke.
double final_adiabaticity(const FrequencyProtocol& protocol, const SolverTolerances& tolerances = {});

}  // namespace sta_otto

#endif  // STA_OTTO_OSCILLATOR_DYNAMICS_HPP
