#pragma once

#include <stdexcept>
#include <string>

namespace pauliprop {

/// Malformed input or a violated precondition. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resource limit hit, e.g. term explosion past `max_terms`. Exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics failed to converge. Exit code 4.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pauliprop
