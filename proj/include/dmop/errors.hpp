#pragma once

#include <stdexcept>
#include <string>

namespace dmop {

/// Numeric failure hierarchy. Precondition violations use
/// std::invalid_argument directly.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A bracketed root could not be refined to tolerance within the
/// iteration budget (usually: working precision too low for the tolerance).
struct ConvergenceFailure : NumericError {
  using NumericError::NumericError;
};

/// The root layout of the input polynomial does not match the expected
/// structure (wrong polynomial handed to the isolator).
struct StructureViolation : NumericError {
  using NumericError::NumericError;
};

/// An adaptively truncated infinite sum could not reach the requested
/// tail bound within the radius cap.
struct NonConvergent : NumericError {
  using NumericError::NumericError;
};

/// Operator application has no interior index once the margin is removed.
struct WindowTooSmall : NumericError {
  using NumericError::NumericError;
};

/// Request exceeds a documented implementation limit.
struct CapacityError : NumericError {
  using NumericError::NumericError;
};

}  // namespace dmop
