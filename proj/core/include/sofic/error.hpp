#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a fixed size or enumeration budget.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an object in a state that does not permit it,
/// or a numerical diagnostic crossed its failure threshold.
class InvalidState : public Error {
 public:
  using Error::Error;
};

}  // namespace sofic
