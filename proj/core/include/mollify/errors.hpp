#pragma once

#include <stdexcept>
#include <string>

namespace mollify {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two fields (or a field and a symbol) live on incompatible grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A field contains NaN/Inf, or a spectrum that should be Hermitian is not.
class InvalidFieldError : public Error {
 public:
  using Error::Error;
};

/// The noise budget delta + delta^r exceeds half the data norm, so the
/// discrepancy rule has no admissible parameter.
class NoiseDominatedError : public Error {
 public:
  using Error::Error;
};

/// An iterative selection hit its iteration cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mollify
