#pragma once
// Error taxonomy shared by all modules.

#include <stdexcept>
#include <string>

namespace torusqm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// Point on the z-axis, which the coordinate charts excise.
struct DegenerateAxisError : Error {
  using Error::Error;
};

// Point outside the principal chart (R + w cos u <= 0).
struct ChartError : Error {
  using Error::Error;
};

// An iteration (Newton, series, continued fraction) failed to converge.
struct ConvergenceError : Error {
  using Error::Error;
};

// Parameter combination for which a function family is not defined.
struct ParameterError : Error {
  using Error::Error;
};

// Integration path too close to an irregular singular point.
struct SingularityError : Error {
  using Error::Error;
};

// Adaptive step size underflowed.
struct StiffnessError : Error {
  using Error::Error;
};

// Mode sum tail still above tolerance at the requested truncation order.
struct NonconvergedError : Error {
  using Error::Error;
};

// Field and source point coincide where the kernel is singular.
struct CoincidenceError : Error {
  using Error::Error;
};

// Finite-difference step too large for the requested tolerance.
struct StepError : Error {
  using Error::Error;
};

}  // namespace torusqm
