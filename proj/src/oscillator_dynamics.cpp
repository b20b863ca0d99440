#include "sta_otto/oscillator_dynamics.hpp"

#include <cmath>
#include <fmt/format.h>

#include "sta_otto/errors.hpp"

namespace sta_otto {

namespace {

void check_tolerances(const SolverTolerances& tol) {
  auto ok = [](double v) { return v > 0.0 && v <= 1e-4; };
  if (!ok(tol.rel_tol) || !ok(tol.abs_tol))
    throw ConfigError(fmt::format("solver tolerances must lie in (0, 1e-4] (rel {}, abs {})",
                                  tol.rel_tol, tol.abs_tol));
}

double squared_frequency(const FrequencyProtocol& protocol, Driving driving, double t) {
  const ProtocolSample s = protocol.sample(t);
  return driving == Driving::Bare ? s.omega * s.omega : s.omega_eff_sq;
}

numerics::OdeOptions options(const SolverTolerances& tol) {
  numerics::OdeOptions o;
  o.rel_tol = tol.rel_tol;
  o.abs_tol = tol.abs_tol;
  return o;
}

}  // namespace

LinearPairSolution::LinearPairSolution(FrequencyProtocol protocol, Driving driving,
                                       numerics::DenseTrajectory<4> trajectory)
    : protocol_(std::move(protocol)), driving_(driving), trajectory_(std::move(trajectory)) {}

LinearPairState LinearPairSolution::at(double t) const {
  if (!(t >= 0.0 && t <= duration())) throw OutOfRangeTime(t, duration());
  const auto s = trajectory_.at(t);
  return {s[0], s[1], s[2], s[3]};
}

double LinearPairSolution::wronskian(double t) const {
  const LinearPairState s = at(t);
  return s.y * s.x_dot - s.y_dot * s.x;
}

double LinearPairSolution::frequency_squared(double t) const {
  return squared_frequency(protocol_, driving_, t);
}

LinearPairSolution solve_linear_pair(const FrequencyProtocol& protocol,
                                     const SolverTolerances& tolerances, Driving driving) {
  check_tolerances(tolerances);
  numerics::OdeRhs<4> rhs = [protocol, driving](double t, const numerics::State<4>& y,
                                                numerics::State<4>& dy) {
    const double w2 = squared_frequency(protocol, driving, t);
    dy[0] = y[1];
    dy[1] = -w2 * y[0];
    dy[2] = y[3];
    dy[3] = -w2 * y[2];
  };
  auto traj = numerics::integrate_dopri5<4>(std::move(rhs), 0.0, protocol.duration(),
                                            {0.0, 1.0, 1.0, 0.0}, options(tolerances));
  return LinearPairSolution(protocol, driving, std::move(traj));
}

ErmakovSolution::ErmakovSolution(LinearPairSolution pair, double omega0)
    : pair_(std::move(pair)), omega0_(omega0) {
  if (!(omega0 > 0.0)) throw DomainError("Ermakov reference frequency must be positive");
}

ErmakovPoint ErmakovSolution::at(double t) const {
  const LinearPairState s = pair_.at(t);
  const double w02 = omega0_ * omega0_;
  const double b = std::sqrt(s.y * s.y + w02 * s.x * s.x);
  return {b, (s.y * s.y_dot + w02 * s.x * s.x_dot) / b};
}

double ErmakovSolution::residual(double t) const {
  const LinearPairState s = pair_.at(t);
  const double w02 = omega0_ * omega0_;
  const double w2 = pair_.frequency_squared(t);
  const ErmakovPoint e = at(t);
  // d/dt (b b') = b'^2 + b b'' = Y'^2 + w0^2 X'^2 - w^2 b^2
  const double b_ddot =
      (s.y_dot * s.y_dot + w02 * s.x_dot * s.x_dot - w2 * e.b * e.b - e.b_dot * e.b_dot) / e.b;
  return b_ddot + w2 * e.b - w02 / (e.b * e.b * e.b);
}

ErmakovSolution ermakov_from_linear(const LinearPairSolution& pair, double omega0) {
  return ErmakovSolution(pair, omega0);
}

double adiabaticity_parameter(const LinearPairSolution& pair, double omega0, double omega_t,
                              double t) {
  const LinearPairState s = pair.at(t);
  const double wt2 = omega_t * omega_t;
  return (omega0 * omega0 * (wt2 * s.x * s.x + s.x_dot * s.x_dot) +
          (wt2 * s.y * s.y + s.y_dot * s.y_dot)) /
         (2.0 * omega0 * omega_t);
}

double adiabaticity_parameter_ermakov(const ErmakovSolution& ermakov, double omega_t, double t) {
  const ErmakovPoint e = ermakov.at(t);
  const double w0 = ermakov.omega0();
  return (w0 * w0 / (e.b * e.b) + e.b_dot * e.b_dot + omega_t * omega_t * e.b * e.b) /
         (2.0 * w0 * omega_t);
}

SecondMomentSolution::Moments SecondMomentSolution::at(double t) const {
  const auto s = trajectory_.at(t);
  return {s[0], s[1], s[2]};
}

double SecondMomentSolution::q_star(double t, double omega_t) const {
  const Moments m = at(t);
  const double energy = 0.5 * m.pp + 0.5 * omega_t * omega_t * m.xx;
  return energy / (0.5 * omega_t);
}

SecondMomentSolution solve_second_moments(const FrequencyProtocol& protocol,
                                          const SolverTolerances& tolerances, Driving driving) {
  check_tolerances(tolerances);
  const double w0 = protocol.omega_initial();
  numerics::OdeRhs<3> rhs = [protocol, driving](double t, const numerics::State<3>& y,
                                                numerics::State<3>& dy) {
    const double w2 = squared_frequency(protocol, driving, t);
    dy[0] = 2.0 * y[2];             // d<x^2>/dt = <{x,p}>
    dy[1] = -2.0 * w2 * y[2];       // d<p^2>/dt = -w^2 <{x,p}>
    dy[2] = y[1] - w2 * y[0];       // d(<{x,p}>/2)/dt = <p^2> - w^2 <x^2>
  };
  auto traj = numerics::integrate_dopri5<3>(std::move(rhs), 0.0, protocol.duration(),
                                            {0.5 / w0, 0.5 * w0, 0.0}, options(tolerances));
  return SecondMomentSolution(w0, std::move(traj));
}

double lcd_final_adiabaticity(const FrequencyProtocol& protocol, const SolverTolerances& tolerances) {
  check_tolerances(tolerances);
  if (protocol.is_constant()) return 1.0;  // Omega = omega_0 throughout
  const auto pair = solve_linear_pair(protocol, tolerances, Driving::LocalCounterdiabatic);
  return adiabaticity_parameter(pair, protocol.omega_initial(), protocol.omega_final(),
                                protocol.duration());
}

double final_adiabaticity(const FrequencyProtocol& protocol, const SolverTolerances& tolerances) {
  check_tolerances(tolerances);
  if (protocol.is_constant()) return 1.0;
  const auto pair = solve_linear_pair(protocol, tolerances, Driving::Bare);
  return adiabaticity_parameter(pair, protocol.omega_initial(), protocol.omega_final(),
                                protocol.duration());
}

}  // namespace sta_otto
