#pragma once

#include <stdexcept>
#include <string>

namespace mapcoh {

/// Malformed input data or invalid parameters.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An arithmetic impossibility (division by zero, non-integral multiplicity).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant failed on constructed data (d^2 != 0, bad identity).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The convergence hypothesis dim(K) <= Conn(Y) does not hold.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured size limits.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated cosimplicial object cannot determine the requested data.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mapcoh
