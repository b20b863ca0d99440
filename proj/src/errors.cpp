#include "sta_otto/errors.hpp"

#include <fmt/format.h>

namespace sta_otto {

OutOfRangeTime::OutOfRangeTime(double t, double duration)
    : Error(fmt::format("time {} outside protocol interval [0, {}]", t, duration)), time_(t) {}

SolverFailure::SolverFailure(const std::string& what, double failure_time)
    : NumericalError(fmt::format("{} (at t = {})", what, failure_time)),
      failure_time_(failure_time) {}

StrokeFailure::StrokeFailure(const std::string& stroke, const std::string& what)
    : NumericalError(stroke + " stroke: " + what), stroke_(stroke) {}

}  // namespace sta_otto
