#ifndef STA_OTTO_QUINTIC_SPLINE_HPP
#define STA_OTTO_QUINTIC_SPLINE_HPP

#include <span>
#include <vector>

namespace sta_otto {

struct SplinePoint {
  double value;
  double d1;
  double d2;
};

/// Interpolating quintic spline, C4 at interior knots, with the first and
/// second derivatives clamped to zero at both ends. With two knots it is
/// the quintic smoothstep between the end values.
class QuinticSpline {
 public:
  QuinticSpline(std::span<const double> knots, std::span<const double> values);

  SplinePoint evaluate(double x) const;
  double x_begin() const { return x_.front(); }
  double x_end() const { return x_.back(); }
  std::size_t knot_count() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d1_;  // first derivative at knots
  std::vector<double> d2_;  // second derivative at knots
};

}  // namespace sta_otto

#endif  // STA_OTTO_QUINTIC_SPLINE_HPP
