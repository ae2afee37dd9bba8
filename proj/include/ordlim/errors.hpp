#pragma once

#include <stdexcept>
#include <string>

namespace ordlim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A rule, length, step or enumeration budget ran out before an answer was
/// reached. Kept distinct from logical failures so callers can retry with a
/// larger budget.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

/// The operation needs a structure (a cone, a complete rewrite system) that
/// the given group does not carry.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace ordlim
