#pragma once

#include <stdexcept>
#include <string>

namespace repvar {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid input: excluded parameter values, malformed data, violated
// preconditions.  The CLI maps this to exit code 2.
struct DomainError : Error {
  using Error::Error;
};

// Numeric failure: solver divergence, residual above tolerance, a value that
// does not exist in the requested backend.  The CLI maps this to exit code 3.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace repvar
