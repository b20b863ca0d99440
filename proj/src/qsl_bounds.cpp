#include "sta_otto/qsl_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "sta_otto/errors.hpp"
#include "sta_otto/special_functions.hpp"

namespace sta_otto {

double gaussian_fidelity(double beta, double omega_a, double omega_b, double q_star, double hbar) {
  if (!(beta > 0.0) || !(omega_a > 0.0) || !(omega_b > 0.0) || !(hbar > 0.0) || !(q_star > 0.0))
    throw DomainError("fidelity needs positive beta, frequencies, hbar and q_star");
  const double xa = 0.5 * beta * hbar * omega_a;
  const double xb = 0.5 * beta * hbar * omega_b;
  const double cta = coth(xa), ctb = coth(xb);
  const double ca = csch(xa), cb = csch(xb);

  const double radicand = cta * cta + ctb * ctb + 2.0 * q_star * cta * ctb + ca * ca * cb * cb;
  if (radicand < -1e-12) throw DomainError(fmt::format("fidelity radicand negative ({})", radicand));
  const double root = std::sqrt(std::max(radicand, 0.0));
  // sqrt(R) - ca cb = (R - ca^2 cb^2) / (sqrt(R) + ca cb), and with
  // coth^2 = 1 + csch^2 the numerator is 2 + ca^2 + cb^2 + 2 Q cta ctb.
  const double numerator = 2.0 + ca * ca + cb * cb + 2.0 * q_star * cta * ctb;
  if (!(numerator > 0.0)) throw DomainError("fidelity denominator vanishes");
  return 2.0 * (root + ca * cb) / numerator;
}

double frequency_mismatch_q(double omega_a, double omega_b) {
  return (omega_a * omega_a + omega_b * omega_b) / (2.0 * omega_a * omega_b);
}

double bures_angle(double fidelity) {
  return std::acos(std::sqrt(std::clamp(fidelity, 0.0, 1.0)));
}

BuresData bures_data(double beta, double omega_a, double omega_b, double q_star, double hbar) {
  const double f = gaussian_fidelity(beta, omega_a, omega_b, q_star, hbar);
  return {f, bures_angle(f), beta, omega_a, omega_b, q_star};
}

double qsl_time(double angle, double sa_cost, double hbar) {
  if (!(sa_cost > 0.0))
    throw DivisionByZeroCost(fmt::format("speed-limit time undefined for non-positive driving cost {}", sa_cost));
  return hbar * angle / sa_cost;
}

double efficiency_bound(double work_ad_total, double heat_hot, double bures_sum, double tau,
                        double hbar) {
  const double denominator = heat_hot + hbar * bures_sum / tau;
  if (!(tau > 0.0) || !(denominator > 0.0))
    throw InvalidDenominator(fmt::format("efficiency bound denominator not positive ({})", denominator));
  return -work_ad_total / denominator;
}

double power_bound(double work_ad_total, double tau_qsl_1, double tau_qsl_3) {
  const double sum = tau_qsl_1 + tau_qsl_3;
  if (!(sum > 0.0))
    throw InvalidDenominator(fmt::format("power bound needs a positive speed-limit time sum ({})", sum));
  return -work_ad_total / sum;
}

}  // namespace sta_otto
