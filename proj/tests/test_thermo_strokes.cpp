#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sta_otto/special_functions.hpp"
#include "sta_otto/thermo_strokes.hpp"

using namespace sta_otto;

TEST_CASE("adiabatic stroke works at the reference working point") {
  const double w1 = stroke_work(1.0, 0.32, 1.0, 0.5, 1.0);
  const double w3 = stroke_work(1.0, 1.0, 0.32, 0.05, 1.0);
  CHECK(w1 == doctest::Approx(0.5 * 0.68 * oracle::coth(0.08)).epsilon(1e-13));
  CHECK(w3 == doctest::Approx(-0.5 * 0.68 * oracle::coth(0.025)).epsilon(1e-13));
  CHECK(w1 == doctest::Approx(4.25907).epsilon(2e-6));
  CHECK(w3 == doctest::Approx(-13.60282).epsilon(2e-6));
  CHECK(stroke_work(1.0, 0.7, 0.7, 0.3, 1.0) == 0.0);
}

TEST_CASE("hot isochore heat and its sign threshold") {
  const EngineConfig c;
  const double q2 = hot_isochore_heat(1.0, c);
  CHECK(q2 == doctest::Approx(0.5 * (oracle::coth(0.025) - oracle::coth(0.08))).epsilon(1e-13));
  CHECK(q2 == doctest::Approx(13.74082).epsilon(2e-6));

  const double threshold = heat_sign_threshold(c);
  CHECK(threshold == doctest::Approx(oracle::coth(0.025) / oracle::coth(0.08)).epsilon(1e-14));
  CHECK(threshold == doctest::Approx(3.1938559848).epsilon(1e-10));
  CHECK(std::fabs(hot_isochore_heat(threshold, c)) < 1e-12);
  CHECK(hot_isochore_heat(threshold * (1 + 1e-6), c) < 0.0);
  CHECK(hot_isochore_heat(threshold * (1 - 1e-6), c) > 0.0);

  EngineConfig same = c;
  same.beta2 = same.beta1;
  same.omega2 = same.omega1;
  CHECK(std::fabs(hot_isochore_heat(1.0, same)) < 1e-15);
}

TEST_CASE("engine condition") {
  const auto ok = engine_condition(-9.34, 13.74);
  CHECK(ok.is_engine);
  CHECK(ok.reasons.empty());

  const auto pump = engine_condition(-1.0, -2.0);
  CHECK_FALSE(pump.is_engine);
  REQUIRE(pump.reasons.size() == 1);
  CHECK(pump.reasons[0] == "heat pumped into hot reservoir");

  const auto idle = engine_condition(0.0, 1.0);
  CHECK_FALSE(idle.is_engine);
  REQUIRE(idle.reasons.size() == 1);
  CHECK(idle.reasons[0] == "no net work produced");

  CHECK(engine_condition(2.0, -1.0).reasons.size() == 2);
}

TEST_CASE("adiabatic efficiency reduces to 1 - omega1/omega2") {
  for (double b1 : {0.2, 0.5, 1.0, 5.0, 40.0}) {
    for (double ratio : {0.01, 0.1, 0.5, 0.9}) {
      EngineConfig c;
      c.beta1 = b1;
      c.beta2 = b1 * ratio;
      const double w = stroke_work(1.0, c.omega1, c.omega2, c.beta1, c.hbar) +
                       stroke_work(1.0, c.omega2, c.omega1, c.beta2, c.hbar);
      const double q2 = hot_isochore_heat(1.0, c);
      if (!(q2 > 0.0)) continue;
      CAPTURE(b1);
      CAPTURE(ratio);
      CHECK(-w / q2 == doctest::Approx(1.0 - c.omega1 / c.omega2).epsilon(1e-9));
    }
  }
}

TEST_CASE("monotonic in Q*") {
  const EngineConfig c;
  double prev_w = -1e300, prev_q = 1e300;
  for (double q : oracle::linspace(1.0, 4.0, 31)) {
    const double w = stroke_work(q, 0.32, 1.0, 0.5, 1.0);
    const double h = hot_isochore_heat(q, c);
    CHECK(w > prev_w);
    CHECK(h < prev_q);
    prev_w = w;
    prev_q = h;
  }
}

TEST_CASE("thermal mean energy") {
  for (double beta : {1e-3, 0.05, 0.5, 10.0, 400.0}) {
    for (double w : {0.32, 1.0, 3.0}) {
      const auto s = ThermalOscillatorState::make(beta, w, 1.0);
      CHECK(s.mean_energy == doctest::Approx(0.5 * w * oracle::coth(beta * w / 2)).epsilon(1e-12));
      CHECK(s.mean_energy == thermal_mean_energy(beta, w, 1.0));
    }
  }
  // Ground-state and classical limits.
  CHECK(thermal_mean_energy(1e4, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(thermal_mean_energy(1e-6, 2.0, 1.0) == doctest::Approx(1e6).epsilon(1e-10));
}

TEST_CASE("coth series branch near zero") {
  const double x = 1e-8;
  CHECK(coth(x) == doctest::Approx(oracle::coth(x)).epsilon(1e-15));
  CHECK((coth(1e-3) - 1e3) == doctest::Approx(1e-3 / 3).epsilon(1e-6));
}
