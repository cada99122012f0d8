#pragma once

#include <stdexcept>
#include <string>

namespace catotoc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: invalid dimension, malformed spec, non-normalized input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A map the quantization formula cannot handle (M12 == 0, parabolic trace).
class UnsupportedMap : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A claimed numerical property (unitarity, positivity, an exact identity)
/// failed beyond its tolerance.
class NumericalHealthError : public Error {
 public:
  using Error::Error;
};

/// Requested object would exceed the configured dense-storage budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace catotoc
