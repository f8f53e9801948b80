#pragma once

#include <stdexcept>
#include <string>

namespace agpsched {

// Error categories map onto CLI exit codes: validation -> 2,
// numerical failure -> 3, capacity -> 4.

/// Bad user input: malformed files, out-of-range parameters, degenerate setups.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation failed to meet its accuracy contract (residual, norm drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested system size exceeds a configured dense/simulation limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace agpsched
