#pragma once

#include <stdexcept>
#include <string>

namespace tophom {

/// Malformed argument: bad face, out-of-range index, non-prime field, ...
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bracketing root finder could not find a sign change.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iteration ran out of steps. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}

  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

}  // namespace tophom
