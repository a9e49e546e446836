#pragma once

#include <stdexcept>
#include <string>

namespace sv {

/// Base of every error thrown by the library. Callers that only care about
/// "bad input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidOrders : public Error {
 public:
  using Error::Error;
};

class UnsupportedGenus : public Error {
 public:
  using Error::Error;
};

class InvalidComponent : public Error {
 public:
  using Error::Error;
};

// configuration validation
class InvalidBlock : public Error {
 public:
  using Error::Error;
};

class NonIntegerCylinders : public Error {
 public:
  using Error::Error;
};

class ObstructionViolated : public Error {
 public:
  using Error::Error;
};

class ChainMismatch : public Error {
 public:
  using Error::Error;
};

class GaussBonnetViolated : public Error {
 public:
  using Error::Error;
};

// numerics
class DomainError : public Error {
 public:
  using Error::Error;
};

class SamplingPlanInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace sv
