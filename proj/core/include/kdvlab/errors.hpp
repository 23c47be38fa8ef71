#pragma once

#include <stdexcept>
#include <string>

namespace kdvlab {

// Error taxonomy, mapped to CLI exit codes in commands.cpp:
//   ConfigError -> 1, GuardError (and subclasses) -> 2,
//   InstabilityError -> 3, CalibrationError -> 4.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
  using Error::Error;
};

// Violated precondition, overflow guard, domain error, budget, degeneracy.
struct GuardError : Error {
  using Error::Error;
};

// Bad numeric input (non-finite samples, malformed fields).
struct InputError : GuardError {
  using GuardError::GuardError;
};

// A spectral field that should represent a real function does not.
struct RepresentationError : GuardError {
  using GuardError::GuardError;
};

// Picard iteration failed to contract; message carries the delta used.
struct NoContractionError : GuardError {
  using GuardError::GuardError;
};

struct InstabilityError : Error {
  using Error::Error;
};

struct CalibrationError : Error {
  using Error::Error;
};

}  // namespace kdvlab
