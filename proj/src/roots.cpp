#include "sta_otto/roots.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <utility>

#include "sta_otto/errors.hpp"

namespace sta_otto::numerics {

namespace {

void require_bracket(double fa, double fb, double a, double b) {
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw NoSignChange(fmt::format("function not finite at bracket ends [{}, {}]", a, b));
  if ((fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0))
    throw NoSignChange(fmt::format("no sign change on [{}, {}] (f = {}, {})", a, b, fa, fb));
}

}  // namespace

// Classic zeroin (Brent 1973): inverse quadratic interpolation / secant with
// a bisection safeguard.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol, double abs_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  require_bracket(fa, fb, a, b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};

  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::fabs(b) + rel_tol * std::fabs(b) + abs_tol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return {b, iter};

    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw NoSignChange(fmt::format("Brent iteration limit reached near {}", b));
}

RootResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                       double rel_tol, double abs_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  require_bracket(fa, fb, a, b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};
  for (int iter = 1; iter <= max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, iter};
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
    if (0.5 * std::fabs(b - a) <= rel_tol * std::fabs(0.5 * (a + b)) + abs_tol)
      return {0.5 * (a + b), iter};
  }
  throw NoSignChange("bisection iteration limit reached");
}

}  // namespace sta_otto::numerics
