#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace squeezesim {

/// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One or more parameter invariants violated; messages are keyed by field name.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Numerical failure: divergence, loss of definiteness, failed cross-check,
/// missing root, pole on the real axis.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Requested a steady state (or stable-only quantity) for a drift that has none.
class StabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace squeezesim
