#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base for numerical failures (non-convergence, missing roots, broken invariants at run time).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryMismatch : public std::invalid_argument {
 public:
  GeometryMismatch() : std::invalid_argument("states/fields live on different geometries") {}
};

/// Amplitude crossed between the two reflecting end sites of a wire.
class SeamLeak : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class HorizonExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// alpha == c: the marginal X = 1 solution of the amplitude recursion, not handled.
class MarginalCase : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qwalk
