#pragma once

#include <stdexcept>
#include <string>

namespace diffblp {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-conformant matrix/vector dimensions.
struct ShapeError : Error {
  using Error::Error;
};

// Invalid argument values (log of non-positive, NaN inputs, division by zero).
struct DomainError : Error {
  using Error::Error;
};

// Malformed structural inputs: empty market lists, zero-size markets,
// non-positive firm labels, unsorted market ids.
struct StructureError : Error {
  using Error::Error;
};

// Iterative solver exhausted its budget; carries the last residual.
struct ConvergenceError : Error {
  double residual;
  int iterations;
  ConvergenceError(const std::string& what, double residual_, int iterations_)
      : Error(what + " (residual " + std::to_string(residual_) + " after " +
              std::to_string(iterations_) + " iterations)"),
        residual(residual_),
        iterations(iterations_) {}
};

// Rank deficiency / singular systems where an exact solve was required.
struct LinAlgError : Error {
  using Error::Error;
};

// Bad configuration keys or values.
struct ConfigError : Error {
  using Error::Error;
};

// MCMC diagnostics failed; summaries refused.
struct DiagnosticsError : Error {
  using Error::Error;
};

}  // namespace diffblp
