#pragma once

#include <stdexcept>
#include <string>

namespace exciton {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation is not defined for the given motion profile.
struct NotApplicable : Error {
  using Error::Error;
};

/// A geometric distance or coupling became non-positive.
struct PositivityViolation : Error {
  using Error::Error;
};

/// Parameter outside its admissible range.
struct DomainError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Adaptive step-size control stalled below machine resolution.
struct StepSizeUnderflow : Error {
  using Error::Error;
};

/// Closed-form dimer results require gamma_1 = gamma_2 + gamma_sink.
struct GammaConditionViolated : Error {
  using Error::Error;
};

struct NoMaximumInBracket : Error {
  using Error::Error;
};

struct NoSignChange : Error {
  using Error::Error;
};

/// Invalid configuration file or overrides (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace exciton
