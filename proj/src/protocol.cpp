#include "sta_otto/protocol.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <string>

#include "sta_otto/errors.hpp"
#include "sta_otto/quintic_spline.hpp"

namespace sta_otto {

double lcd_frequency_squared(double omega, double omega_dot, double omega_ddot) {
  return omega * omega - 0.75 * omega_dot * omega_dot / (omega * omega) +
         0.5 * omega_ddot / omega;
}

FrequencyProtocol FrequencyProtocol::polynomial_ramp(double omega_initial, double omega_final,
                                                     double duration) {
  if (!(omega_initial > 0.0) || !(omega_final > 0.0) || !std::isfinite(omega_initial) ||
      !std::isfinite(omega_final))
    throw InvalidProtocol("protocol frequencies must be positive and finite");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw InvalidProtocol("protocol duration must be positive and finite");
  FrequencyProtocol p;
  p.kind_ = ProtocolKind::PolynomialRamp;
  p.omega_initial_ = omega_initial;
  p.omega_final_ = omega_final;
  p.duration_ = duration;
  return p;
}

FrequencyProtocol FrequencyProtocol::user_table(std::span<const double> t,
                                                std::span<const double> omega) {
  if (t.size() != omega.size()) throw InvalidProtocol("time and frequency columns differ in length");
  if (t.size() < 2) throw InvalidProtocol("protocol table needs at least two knots");
  if (t.front() != 0.0) throw InvalidProtocol("protocol table must start at t = 0");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(omega[i]))
      throw InvalidProtocol(fmt::format("non-finite value in protocol table row {}", i));
    if (!(omega[i] > 0.0))
      throw InvalidProtocol(fmt::format("non-positive frequency in protocol table row {}", i));
    if (i > 0 && !(t[i] > t[i - 1]))
      throw InvalidProtocol(fmt::format("protocol table times not increasing at row {}", i));
  }

  FrequencyProtocol p;
  p.kind_ = ProtocolKind::UserTable;
  p.omega_initial_ = omega.front();
  p.omega_final_ = omega.back();
  p.duration_ = t.back();
  p.spline_ = std::make_shared<const QuinticSpline>(t, omega);

  // The fit must stay a valid (positive) frequency between the knots.
  constexpr int kPerSegment = 32;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    for (int q = 1; q < kPerSegment; ++q) {
      const double x = t[j] + (t[j + 1] - t[j]) * q / kPerSegment;
      if (!(p.spline_->evaluate(x).value > 0.0))
        throw InvalidProtocol(fmt::format("spline fit of protocol table is non-positive near t = {}", x));
    }
  }
  return p;
}

bool FrequencyProtocol::is_constant() const {
  if (kind_ == ProtocolKind::PolynomialRamp) return omega_initial_ == omega_final_;
  return false;
}

ProtocolSample FrequencyProtocol::sample(double t) const {
  if (kind_ == ProtocolKind::PolynomialRamp) return evaluate_polynomial_ramp(*this, t);
  if (!(t >= 0.0 && t <= duration_)) throw OutOfRangeTime(t, duration_);
  const SplinePoint sp = spline_->evaluate(t);
  return {t, sp.value, sp.d1, sp.d2, lcd_frequency_squared(sp.value, sp.d1, sp.d2)};
}

ProtocolSample evaluate_polynomial_ramp(const FrequencyProtocol& protocol, double t) {
  if (protocol.kind() != ProtocolKind::PolynomialRamp)
    throw InvalidProtocol("evaluate_polynomial_ramp called on a table protocol");
  const double tau = protocol.duration();
  if (!(t >= 0.0 && t <= tau)) throw OutOfRangeTime(t, tau);
  const double s = t / tau;
  const double dw = protocol.omega_final() - protocol.omega_initial();
  const double s2 = s * s;
  const double omega = protocol.omega_initial() + dw * s2 * s * (10.0 + s * (-15.0 + 6.0 * s));
  // 30 s^2 (1 - s)^2 and 60 s (1 - s)(1 - 2s) keep the endpoint zeros exact.
  const double one_minus = 1.0 - s;
  const double omega_dot = dw * 30.0 * s2 * one_minus * one_minus / tau;
  const double omega_ddot = dw * 60.0 * s * one_minus * (1.0 - 2.0 * s) / (tau * tau);
  return {t, omega, omega_dot, omega_ddot, lcd_frequency_squared(omega, omega_dot, omega_ddot)};
}

InversionReport check_trap_inversion(const FrequencyProtocol& protocol, std::size_t grid_size) {
  if (grid_size < 16) throw ConfigError("trap inversion scan needs at least 16 grid points");
  const double tau = protocol.duration();
  auto omega_eff_sq = [&](double t) { return protocol.sample(t).omega_eff_sq; };

  std::size_t best = 0;
  double best_value = omega_eff_sq(0.0);
  for (std::size_t i = 1; i <= grid_size; ++i) {
    const double t = tau * static_cast<double>(i) / static_cast<double>(grid_size);
    const double v = omega_eff_sq(t);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double argmin = tau * static_cast<double>(best) / static_cast<double>(grid_size);
  const double lo = tau * static_cast<double>(best == 0 ? 0 : best - 1) / static_cast<double>(grid_size);
  const double hi =
      tau * static_cast<double>(std::min(best + 1, grid_size)) / static_cast<double>(grid_size);
  const auto refined = boost::math::tools::brent_find_minima(omega_eff_sq, lo, hi, 40);
  if (refined.second < best_value) {
    best_value = refined.second;
    argmin = refined.first;
  }
  return {best_value, argmin, best_value <= 0.0};
}

FrequencyProtocol load_protocol_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open protocol table '{}'", path.string()));
  std::vector<double> t, omega;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected two comma-separated columns", path.string(), line_no));
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double tv = std::stod(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      const double wv = std::stod(b, &used);
      if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
      header_allowed = false;
      t.push_back(tv);
      omega.push_back(wv);
    } catch (const std::logic_error&) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ConfigError(fmt::format("{}:{}: cannot parse numbers", path.string(), line_no));
    }
  }
  return FrequencyProtocol::user_table(t, omega);
}

}  // namespace sta_otto
