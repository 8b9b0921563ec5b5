#pragma once

#include <stdexcept>
#include <string>

namespace secrecy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value type's invariant does not hold (non-Hermitian input, NaN entry, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, CSV).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions are incompatible.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested configuration is valid but not supported (e.g. finite-SNR sweeps with n_T > 1).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Iterative routine exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace secrecy
