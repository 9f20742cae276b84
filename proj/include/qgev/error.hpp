#pragma once

#include <stdexcept>
#include <string>

namespace qgev {

/// Base class of all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

/// Incompatible matrix/vector/polynomial shapes or subsystem dimensions.
struct ShapeError : Error {
  using Error::Error;
};

/// A field element or polynomial coefficient was required to be rational (or real) and is not.
struct NotRationalError : Error {
  using Error::Error;
};

/// A Sturm count was requested at an endpoint that is itself a root.
struct RootAtEndpoint : Error {
  using Error::Error;
};

/// Malformed serialized input.
struct ParseError : Error {
  using Error::Error;
};

/// Unreadable or unwritable file.
struct IoError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace qgev
