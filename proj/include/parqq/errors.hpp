#pragma once

#include <stdexcept>
#include <string>

namespace parqq {

/// A caller-supplied parameter violates an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested instance is too large for exact enumeration or dense storage.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerically checked property did not hold.
class PropertyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parqq
