#ifndef STA_OTTO_ROOTS_HPP
#define STA_OTTO_ROOTS_HPP

#include <functional>

namespace sta_otto::numerics {

struct RootResult {
  double root;
  int iterations;
};

/// Brent's method on [lo, hi]. Throws NoSignChange when f(lo) and f(hi)
/// have the same sign. Stops when the bracket is narrower than
/// 2 * (rel_tol * |x| + abs_tol).
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol, double abs_tol = 0.0, int max_iter = 200);

/// Plain bisection with the same contract; used to cross-check brent_root.
RootResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                       double rel_tol, double abs_tol = 0.0, int max_iter = 400);

}  // namespace sta_otto::numerics

#endif  // STA_OTTO_ROOTS_HPP
