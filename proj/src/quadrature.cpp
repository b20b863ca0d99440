#include "sta_otto/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fmt/format.h>

#include "sta_otto/errors.hpp"

namespace sta_otto::numerics {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw QuadratureFailure("non-finite integral");
  // A small absolute floor lets identically-zero integrands converge.
  if (error > rel_tol * l1 && error > 1e-300) {
    throw QuadratureFailure(fmt::format(
        "quadrature did not reach relative tolerance {} (error estimate {}, |f|_1 {})", rel_tol,
        error, l1));
  }
  return {value, error, l1};
}

}  // namespace sta_otto::numerics
