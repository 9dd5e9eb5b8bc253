#pragma once

#include <stdexcept>

namespace kronecker {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad ranges, non-coprime moduli, duplicate set elements.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A set element equals zero.
class ZeroElement : public Error {
 public:
  using Error::Error;
};

/// The operation needs distinct absolute values (lattice-based routines).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// The closed-form bounds need a sheared lattice (r > 0).
class RectangularUnsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace kronecker
