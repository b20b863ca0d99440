#ifndef STA_OTTO_QSL_BOUNDS_HPP
#define STA_OTTO_QSL_BOUNDS_HPP

// Fidelity and Bures angle between Gaussian oscillator states, and the
// speed-limit bounds on efficiency and power that follow from them.

namespace sta_otto {

/// Fidelity between two centred single-mode Gaussian states with thermal
/// parameters beta hbar omega_a / 2 and beta hbar omega_b / 2, and relative
/// squeezing measured by q_star (q_star = 1 means the covariance ellipses
/// are aligned):
///
///   F = 2 / (sqrt(ct_a^2 + ct_b^2 + 2 Q ct_a ct_b + c_a^2 c_b^2) - c_a c_b)
///
/// with ct = coth and c = csch. Evaluated in a cancellation-free form that
/// is stable at both high and low temperature. Throws DomainError for
/// non-positive inputs or a negative radicand.
double gaussian_fidelity(double beta, double omega_a, double omega_b, double q_star, double hbar);

/// Relative squeezing of two oscillator ground states of frequencies
/// omega_a and omega_b: (omega_a^2 + omega_b^2) / (2 omega_a omega_b).
double frequency_mismatch_q(double omega_a, double omega_b);

/// arccos(sqrt(F)), F clamped to [0, 1] against round-off.
double bures_angle(double fidelity);

struct BuresData {
  double fidelity;
  double bures_angle;
  double beta;
  double omega_a;
  double omega_b;
  double q_star;
};

BuresData bures_data(double beta, double omega_a, double omega_b, double q_star, double hbar);

/// hbar * angle / sa_cost. Throws DivisionByZeroCost if sa_cost <= 0.
double qsl_time(double bures_angle, double sa_cost, double hbar);

/// -W_AD / (Q2 + hbar (L1 + L3) / tau). Throws InvalidDenominator if the
/// denominator is not positive.
double efficiency_bound(double work_ad_total, double heat_hot, double bures_sum, double tau,
                        double hbar);

/// -W_AD / (tau_qsl_1 + tau_qsl_3). Throws InvalidDenominator if the sum is
/// not positive.
double power_bound(double work_ad_total, double tau_qsl_1, double tau_qsl_3);

struct QslReport {
  double tau_qsl_1;
  double tau_qsl_3;
  double eta_bound;
  double power_bound;
};

}  // namespace sta_otto

#endif  // STA_OTTO_QSL_BOUNDS_HPP
