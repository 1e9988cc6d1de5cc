#ifndef VIBCOOL_ERRORS_HPP
#define VIBCOOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vibcool {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user input: bad grid, bad config file, mismatched objects.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Argument outside the mathematical domain of a formula.
class DomainError : public ConfigError {
 public:
  explicit DomainError(const std::string& msg) : ConfigError(msg) {}
};

// Grid or basis cannot represent what was asked for.
class ResolutionError : public ConfigError {
 public:
  explicit ResolutionError(const std::string& msg) : ConfigError(msg) {}
};

// Runtime numerical failure: NaN propagation, lost monotonicity.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Time step too large for the propagator expansion to converge.
class StepSizeError : public NumericError {
 public:
  StepSizeError(const std::string& msg, double suggested_dt)
      : NumericError(msg), suggested_dt(suggested_dt) {}
  double suggested_dt;
};

}  // namespace vibcool

#endif
