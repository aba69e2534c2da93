#pragma once

#include <stdexcept>
#include <string>

namespace rsbm {

/// Argument outside the domain of an operation (bad ordering, q <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter combination for which no closed form is implemented.
class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration object (tolerances, path-simulation step, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace rsbm
