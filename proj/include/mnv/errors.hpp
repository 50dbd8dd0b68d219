// errors.hpp — exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace mnv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Truncation escalation hit its ceiling without passing the doubling test.
struct NonConverged : Error {
  using Error::Error;
};

struct InvalidOrder : Error {
  using Error::Error;
};

struct MismatchedBarrier : Error {
  using Error::Error;
};

struct NoResonantAction : Error {
  using Error::Error;
};

struct SeparatrixEnergy : Error {
  using Error::Error;
};

struct StepTooLarge : Error {
  using Error::Error;
};

struct UnnormalizedInput : Error {
  using Error::Error;
};

struct NonHermitian : Error {
  using Error::Error;
};

struct NonOrthonormalBasis : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mnv
