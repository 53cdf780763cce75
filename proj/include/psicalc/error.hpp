#pragma once

#include <stdexcept>
#include <string>

namespace psicalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition stated on an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands live in different algebra contexts (or have incompatible shapes).
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis (automorphism, twisted Leibniz rule, trace law, ...)
/// required by the operation does not hold or was never verified.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A coefficient was requested below the certified truncation floor.
class UncertifiedError : public Error {
 public:
  using Error::Error;
};

}  // namespace psicalc
