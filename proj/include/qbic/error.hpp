#pragma once

#include <stdexcept>
#include <string>

namespace qbic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, unknown builtin, inconsistent dimensions.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed its hard size cap.
class RangeExceeded : public Error {
 public:
  using Error::Error;
};

/// The invariant-profile table did not separate geometric types.
class AmbiguousMatch : public Error {
 public:
  using Error::Error;
};

/// No standard form has the profile of the input.
class NoMatch : public Error {
 public:
  using Error::Error;
};

class SingularForm : public Error {
 public:
  using Error::Error;
};

/// The Hermitian vectors did not span within the allowed extensions.
class NotSplit : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace qbic
