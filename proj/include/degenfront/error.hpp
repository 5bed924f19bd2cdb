#pragma once

#include <stdexcept>
#include <string>

namespace degenfront {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or malformed input artifact.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, sign violation, blown-up state).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace degenfront
