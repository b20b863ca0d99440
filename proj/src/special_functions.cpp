#include "sta_otto/special_functions.hpp"

#include <cmath>

namespace sta_otto {

namespace {

constexpr double kSeriesSwitch = 1e-4;

}  // namespace

double coth(double x) {
  const double ax = std::fabs(x);
  if (ax < kSeriesSwitch) {
    const double x2 = x * x;
    // 1/x + x/3 - x^3/45 + 2x^5/945
    return 1.0 / x + x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0)));
  }
  const double e = std::exp(-2.0 * ax);
  const double value = (1.0 + e) / -std::expm1(-2.0 * ax);
  return std::copysign(value, x);
}

double csch(double x) {
  const double ax = std::fabs(x);
  if (ax < kSeriesSwitch) {
    const double x2 = x * x;
    // 1/x - x/6 + 7x^3/360 - 31x^5/15120
    return 1.0 / x + x * (-1.0 / 6.0 + x2 * (7.0 / 360.0 + x2 * (-31.0 / 15120.0)));
  }
  const double value = 2.0 * std::exp(-ax) / -std::expm1(-2.0 * ax);
  return std::copysign(value, x);
}

}  // namespace sta_otto
