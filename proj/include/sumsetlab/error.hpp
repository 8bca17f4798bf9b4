#pragma once

#include <stdexcept>
#include <string>

namespace sumsetlab {

/// Base of every error raised by the library. The CLI maps all of these to
/// exit code 2 (malformed input) except InternalInvariantError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked integer operation left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Input too small for the operation (e.g. normalizing a singleton).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input could not be parsed or is structurally invalid.
class MalformedInputError : public Error {
 public:
  using Error::Error;
};

/// Elements of different groups were combined.
class TypeConfusionError : public Error {
 public:
  using Error::Error;
};

/// The group does not support the operation (order on Z/nZ, sums over a
/// non-abelian inner group, ...).
class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

class InvalidCertificateError : public Error {
 public:
  using Error::Error;
};

/// Something that the underlying mathematics guarantees did not happen.
/// Either an implementation bug or a falsified claim; the message carries the
/// full trace.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace sumsetlab
