#ifndef STA_OTTO_PROTOCOL_HPP
#define STA_OTTO_PROTOCOL_HPP

// Frequency schedules omega(t) for the driven strokes and the local
// counterdiabatic effective frequency derived from them.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

namespace sta_otto {

class QuinticSpline;

enum class ProtocolKind { PolynomialRamp, UserTable };

struct ProtocolSample {
  double t;
  double omega;
  double omega_dot;
  double omega_ddot;
  double omega_eff_sq;  // LCD squared frequency
};

/// Omega^2 - 3 omega_dot^2 / (4 omega^2) + omega_ddot / (2 omega).
double lcd_frequency_squared(double omega, double omega_dot, double omega_ddot);

class FrequencyProtocol {
 public:
  /// omega(s) = wi + (wf - wi)(10 s^3 - 15 s^4 + 6 s^5), s = t / duration.
  static FrequencyProtocol polynomial_ramp(double omega_initial, double omega_final,
                                           double duration);

  /// Clamped quintic-spline protocol through (t, omega) knots. The first
  /// knot must be at t = 0; the last knot time is the duration.
  static FrequencyProtocol user_table(std::span<const double> t, std::span<const double> omega);

  ProtocolKind kind() const { return kind_; }
  double omega_initial() const { return omega_initial_; }
  double omega_final() const { return omega_final_; }
  double duration() const { return duration_; }
  bool is_constant() const;

  /// Throws OutOfRangeTime for t outside [0, duration].
  ProtocolSample sample(double t) const;

 private:
  FrequencyProtocol() = default;

  ProtocolKind kind_ = ProtocolKind::PolynomialRamp;
  double omega_initial_ = 0.0;
  double omega_final_ = 0.0;
  double duration_ = 0.0;
  std::shared_ptr<const QuinticSpline> spline_;
};

/// Analytic quintic ramp evaluation. Requires kind() == PolynomialRamp.
ProtocolSample evaluate_polynomial_ramp(const FrequencyProtocol& protocol, double t);

struct InversionReport {
  double min_omega_eff_sq;
  double argmin_t;
  bool inverted;
};

/// Scans Omega^2(t) on a uniform grid, then refines around the smallest
/// grid value with a bracketed minimiser. grid_size must be >= 16.
InversionReport check_trap_inversion(const FrequencyProtocol& protocol, std::size_t grid_size);

/// Reads a two-column (t, omega) CSV with an optional header line.
FrequencyProtocol load_protocol_table(const std::filesystem::path& path);

}  // namespace sta_otto

#endif  // STA_OTTO_PROTOCOL_HPP
