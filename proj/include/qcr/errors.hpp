#pragma once

#include <stdexcept>
#include <string>

namespace qcr {

// Bad input: malformed state, violated invariant, inconsistent dimensions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed input on which a numerical routine could not produce a
// trustworthy answer (optimizer failure, overflow of the search space, ...).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcr
