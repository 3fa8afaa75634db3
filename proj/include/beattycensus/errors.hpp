#pragma once

#include <stdexcept>
#include <string>

namespace bc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: malformed input, out-of-range values, unsupported options.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula (e.g. log3 x <= 0).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Not enough data points to form an estimate.
class InsufficientDataError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Adaptive evaluation could not decide a floor/sign below the precision cap.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A configured memory or size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace bc
