#pragma once

#include <stdexcept>
#include <string>

namespace hhlab {

// Base class for every error raised by the library. The CLI maps subclasses
// onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class IncompatibleBimodule : public Error {
 public:
  using Error::Error;
};

class NotASubspace : public Error {
 public:
  using Error::Error;
};

// Raised when a cochain construction would exceed the configured dense-size
// budget (entries of the largest differential).
class DegreeTooLarge : public Error {
 public:
  using Error::Error;
};

class NotADerivation : public Error {
 public:
  using Error::Error;
};

class BlockStructureViolated : public Error {
 public:
  using Error::Error;
};

class CoverConditionViolated : public Error {
 public:
  using Error::Error;
};

class HypothesisUnverifiable : public Error {
 public:
  using Error::Error;
};

class NotProjective : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ReferenceError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhlab
