#pragma once

#include <stdexcept>
#include <string>

namespace patternforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-supplied data violates an operation's precondition.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Guided detection was requested without a label set.
class MissingLabelsError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An engine invariant was broken; always a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace patternforge
