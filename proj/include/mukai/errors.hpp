#pragma once

#include <stdexcept>
#include <string>

namespace mukai {

// Vector or matrix sizes that do not match the lattice they are used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded search ran past its a-priori bound. For valid inputs the bounds
// are proved sufficient, so this signals inconsistent input data.
class SearchBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (e.g. a computed graph violates the
// mass formula). Indicates a bug or a corrupted input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mukai
