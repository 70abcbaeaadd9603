#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wg {

/// Invalid user input (configuration, case parameters, coefficient data).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite data encountered while integrating problem data.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { not_converged, indefinite };

  SolverError(Kind kind, const std::string& what, std::vector<double> residual_history = {})
      : std::runtime_error(what), kind_(kind), history_(std::move(residual_history)) {}

  Kind kind() const { return kind_; }
  const std::vector<double>& residual_history() const { return history_; }

 private:
  Kind kind_;
  std::vector<double> history_;
};

}  // namespace wg
