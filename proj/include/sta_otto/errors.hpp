#ifndef STA_OTTO_ERRORS_HPP
#define STA_OTTO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sta_otto {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: configuration files, CLI arguments, protocol tables.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidProtocol : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class OutOfRangeTime : public Error {
 public:
  OutOfRangeTime(double t, double duration);
  double time() const { return time_; }

 private:
  double time_;
};

// Anything that went wrong inside the numerics.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public NumericalError {
 public:
  SolverFailure(const std::string& what, double failure_time);
  double failure_time() const { return failure_time_; }

 private:
  double failure_time_;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSignChange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivisionByZeroCost : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TrapInversionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A numerical failure tagged with the stroke it happened in.
class StrokeFailure : public NumericalError {
 public:
  StrokeFailure(const std::string& stroke, const std::string& what);
  const std::string& stroke() const { return stroke_; }

 private:
  std::string stroke_;
};

}  // namespace sta_otto

#endif  // STA_OTTO_ERRORS_HPP
