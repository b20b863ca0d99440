#ifndef STA_OTTO_SPECIAL_FUNCTIONS_HPP
#define STA_OTTO_SPECIAL_FUNCTIONS_HPP

namespace sta_otto {

/// Hyperbolic cotangent. Uses a Laurent series for |x| < 1e-4 and
/// exp-scaled evaluation elsewhere, so it neither cancels near zero nor
/// overflows for large |x|. Undefined at x = 0.
double coth(double x);

/// Hyperbolic cosecant with the same branch structure as coth().
double csch(double x);

}  // namespace sta_otto

#endif  // STA_OTTO_SPECIAL_FUNCTIONS_HPP
