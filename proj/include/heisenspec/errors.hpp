#pragma once

#include <stdexcept>
#include <string>

namespace heisenspec {

// Violated precondition: bad argument, unsupported size, non-prime modulus.
// The CLI maps these to exit code 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: iteration caps, root-count mismatches, overflow.
// The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace heisenspec
