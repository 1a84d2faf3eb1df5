#pragma once

#include <stdexcept>
#include <string>

namespace tflow {

// Base of every exception thrown by the library. Violations found while
// validating a flow are reported as data, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A time or argument outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed or semantically invalid input data.
class InputError : public Error {
 public:
  using Error::Error;
};

// An intermediate quantity does not fit in 64 bits.
class OverflowError : public InputError {
 public:
  using InputError::InputError;
};

// A canonical network breaks one of the structural role conditions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Full time expansion or path enumeration would exceed a configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A steady-state graph admits an s-d path of infinite capacity.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tflow
