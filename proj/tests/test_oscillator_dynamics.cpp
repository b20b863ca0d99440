#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sta_otto/errors.hpp"
#include "sta_otto/oscillator_dynamics.hpp"

using namespace sta_otto;

TEST_CASE("constant frequency: closed-form pair, unit Wronskian, b = 1, Q* = 1") {
  const double w0 = 0.7;
  const auto p = FrequencyProtocol::polynomial_ramp(w0, w0, 12.0);
  const auto pair = solve_linear_pair(p);
  const auto erm = ermakov_from_linear(pair, w0);
  for (double t : oracle::linspace(0.0, 12.0, 61)) {
    const auto s = pair.at(t);
    CHECK(s.x == doctest::Approx(std::sin(w0 * t) / w0).epsilon(1e-8));
    CHECK(std::fabs(s.y - std::cos(w0 * t)) < 1e-9);
    CHECK(std::fabs(pair.wronskian(t) - 1.0) < 1e-9);
    CHECK(std::fabs(erm.at(t).b - 1.0) < 1e-9);
    CHECK(std::fabs(adiabaticity_parameter(pair, w0, w0, t) - 1.0) < 1e-9);
  }
}

TEST_CASE("Wronskian constancy on quintic ramps") {
  // Global error grows with the number of oscillations; the long stroke
  // gets a tighter local tolerance to stay inside 1e-9.
  for (double tau : {0.1, 1.0, 10.0, 100.0}) {
    const SolverTolerances tol = tau > 50.0 ? SolverTolerances{1e-11, 1e-13} : SolverTolerances{};
    for (auto [wi, wf] : {std::pair{0.32, 1.0}, std::pair{1.0, 0.32}}) {
      const auto pair = solve_linear_pair(FrequencyProtocol::polynomial_ramp(wi, wf, tau), tol);
      double worst = 0.0;
      for (double t : oracle::linspace(0.0, tau, 101)) worst = std::max(worst, std::fabs(pair.wronskian(t) - 1.0));
      CAPTURE(tau);
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("pair agrees with an independent RKF78 integration") {
  const double tau = 0.5;
  const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, tau);
  const auto pair = solve_linear_pair(p);
  const auto times = oracle::linspace(0.0, tau, 21);
  const auto ref = oracle::linear_pair(
      [&](double t) { return std::pow(oracle::quintic_ramp(0.32, 1.0, tau, t).omega, 2); }, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto s = pair.at(times[i]);
    CHECK(std::fabs(s.x - ref[i][0]) < 1e-10);
    CHECK(std::fabs(s.x_dot - ref[i][1]) < 1e-10);
    CHECK(std::fabs(s.y - ref[i][2]) < 1e-10);
    CHECK(std::fabs(s.y_dot - ref[i][3]) < 1e-10);
  }
}

TEST_CASE("fast ramp stays finite and is tolerance-consistent") {
  const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, 0.1);
  const auto tight = solve_linear_pair(p, {1e-12, 1e-14});
  const auto loose = solve_linear_pair(p, {1e-8, 1e-10});
  for (double t : oracle::linspace(0.0, 0.1, 11)) {
    const auto a = tight.at(t), b = loose.at(t);
    CHECK(std::isfinite(a.x));
    CHECK(std::fabs(a.x - b.x) < 1e-7);
    CHECK(std::fabs(a.y - b.y) < 1e-7);
  }
  CHECK(tight.step_count() > loose.step_count());
}

TEST_CASE("tolerance preconditions") {
  const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, 1.0);
  CHECK_THROWS_AS(solve_linear_pair(p, {0.0, 1e-12}), ConfigError);
  CHECK_THROWS_AS(solve_linear_pair(p, {1e-3, 1e-12}), ConfigError);
  CHECK_THROWS_AS(solve_second_moments(p, {1e-10, 2e-4}), ConfigError);
  const auto pair = solve_linear_pair(p);
  CHECK_THROWS_AS(pair.at(1.5), OutOfRangeTime);
}

TEST_CASE("Ermakov scaling factor") {
  SUBCASE("adiabatic limit b(tau) -> sqrt(w0 / wf)") {
    const auto pair = solve_linear_pair(FrequencyProtocol::polynomial_ramp(0.32, 1.0, 100.0));
    const auto erm = ermakov_from_linear(pair, 0.32);
    CHECK(erm.at(100.0).b == doctest::Approx(std::sqrt(0.32)).epsilon(1e-3));
  }
  SUBCASE("initial conditions and residual of the Ermakov equation") {
    for (double tau : {0.1, 1.0, 10.0}) {
      const auto pair = solve_linear_pair(FrequencyProtocol::polynomial_ramp(0.32, 1.0, tau));
      const auto erm = ermakov_from_linear(pair, 0.32);
      CHECK(erm.at(0.0).b == 1.0);
      CHECK(erm.at(0.0).b_dot == 0.0);
      for (double t : oracle::linspace(0.0, tau, 101)) {
        CHECK(erm.at(t).b > 0.0);
        CHECK(std::fabs(erm.residual(t)) < 1e-8 * 0.32 * 0.32);
      }
    }
  }
  SUBCASE("closed form matches a direct integration of the nonlinear equation") {
    const double tau = 1.0, w0 = 0.32;
    const auto pair = solve_linear_pair(FrequencyProtocol::polynomial_ramp(w0, 1.0, tau));
    const auto erm = ermakov_from_linear(pair, w0);
    const auto times = oracle::linspace(0.0, tau, 11);
    const auto ref = oracle::integrate<2>(
        [&](const std::array<double, 2>& y, std::array<double, 2>& dy, double t) {
          const double w = oracle::quintic_ramp(w0, 1.0, tau, t).omega;
          dy = {y[1], -w * w * y[0] + w0 * w0 / (y[0] * y[0] * y[0])};
        },
        {1.0, 0.0}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(erm.at(times[i]).b == doctest::Approx(ref[i][0]).epsilon(1e-10));
      CHECK(std::fabs(erm.at(times[i]).b_dot - ref[i][1]) < 1e-10);
    }
  }
}

TEST_CASE("adiabaticity parameter") {
  SUBCASE("adiabatic limit") {
    const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, 100.0);
    CHECK(std::fabs(final_adiabaticity(p) - 1.0) < 1e-3);
  }
  SUBCASE("fast stroke: Husimi and Ermakov forms agree; value against RKF78 oracle") {
    const double tau = 0.5;
    const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, tau);
    const auto pair = solve_linear_pair(p);
    const double husimi = adiabaticity_parameter(pair, 0.32, 1.0, tau);
    const double ermakov = adiabaticity_parameter_ermakov(ermakov_from_linear(pair, 0.32), 1.0, tau);
    CHECK(husimi > 1.0);
    CHECK(husimi == doctest::Approx(ermakov).epsilon(1e-8));
    const auto ref = oracle::linear_pair(
        [&](double t) { return std::pow(oracle::quintic_ramp(0.32, 1.0, tau, t).omega, 2); }, {tau}).back();
    const double w0 = 0.32, wf = 1.0;
    const double q_ref = (w0 * w0 * (wf * wf * ref[0] * ref[0] + ref[1] * ref[1]) + wf * wf * ref[2] * ref[2] +
                          ref[3] * ref[3]) / (2 * w0 * wf);
    CHECK(husimi == doctest::Approx(q_ref).epsilon(1e-9));
  }
  SUBCASE("sudden limit approaches (w0^2 + wf^2) / (2 w0 wf)") {
    const auto p = FrequencyProtocol::polynomial_ramp(0.32, 1.0, 1e-4);
    CHECK(final_adiabaticity(p) == doctest::Approx((0.32 * 0.32 + 1.0) / (2 * 0.32)).epsilon(1e-6));
  }
}

TEST_CASE("three routes to Q*(t) agree and Q* >= 1") {
  for (double tau : {0.1, 1.0, 10.0}) {
    for (auto [wi, wf] : {std::pair{0.32, 1.0}, std::pair{1.0, 0.32}}) {
      const auto p = FrequencyProtocol::polynomial_ramp(wi, wf, tau);
      const auto pair = solve_linear_pair(p);
      const auto erm = ermakov_from_linear(pair, wi);
      const auto moments = solve_second_moments(p);
      for (double t : oracle::linspace(0.0, tau, 101)) {
        const double wt = p.sample(t).omega;
        const double q1 = adiabaticity_parameter(pair, wi, wt, t);
        const double q2 = adiabaticity_parameter_ermakov(erm, wt, t);
        const double q3 = moments.q_star(t, wt);
        CAPTURE(tau);
        CAPTURE(t);
        CHECK(std::fabs(q1 - q2) <= 1e-8 * q1);
        CHECK(std::fabs(q1 - q3) <= 1e-8 * q1);
        CHECK(q1 >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("local counterdiabatic driving restores Q*(tau) = 1") {
  for (double tau : {0.05, 0.1, 0.5, 1.0, 5.0}) {
    CAPTURE(tau);
    CHECK(std::fabs(lcd_final_adiabaticity(FrequencyProtocol::polynomial_ramp(0.32, 1.0, tau)) - 1.0) < 1e-6);
    CHECK(std::fabs(lcd_final_adiabaticity(FrequencyProtocol::polynomial_ramp(1.0, 0.32, tau)) - 1.0) < 1e-6);
  }
  CHECK(lcd_final_adiabaticity(FrequencyProtocol::polynomial_ramp(0.5, 0.5, 1.0)) == 1.0);
  // The bare stroke at the same duration is far from adiabatic.
  CHECK(final_adiabaticity(FrequencyProtocol::polynomial_ramp(0.32, 1.0, 0.2)) > 1.5);
}

TEST_CASE("LCD-driven scaling factor follows the adiabatic b_ad exactly") {
  const double tau = 0.3, w0 = 0.32;
  const auto p = FrequencyProtocol::polynomial_ramp(w0, 1.0, tau);
  const auto erm = ermakov_from_linear(solve_linear_pair(p, {}, Driving::LocalCounterdiabatic), w0);
  for (double t : oracle::linspace(0.0, tau, 31)) {
    const auto s = p.sample(t);
    const double b_ad = std::sqrt(w0 / s.omega);
    CHECK(erm.at(t).b == doctest::Approx(b_ad).epsilon(1e-8));
    // b_ad' = -(1/2) b_ad omega' / omega
    CHECK(std::fabs(erm.at(t).b_dot + 0.5 * b_ad * s.omega_dot / s.omega) < 1e-7);
    CHECK(std::fabs(erm.residual(t)) < 1e-8 * w0 * w0);
  }
}
