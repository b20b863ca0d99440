#ifndef STA_OTTO_QUADRATURE_HPP
#define STA_OTTO_QUADRATURE_HPP

#include <functional>

namespace sta_otto::numerics {

struct QuadratureResult {
  double value;
  double error_estimate;
  double l1_norm;
};

/// Adaptive Gauss-Kronrod (30/61 point) quadrature of f over [a, b].
/// Converged means error_estimate <= rel_tol * l1_norm; anything else
/// throws QuadratureFailure.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth = 15);

}  // namespace sta_otto::numerics

#endif  // STA_OTTO_QUADRATURE_HPP
