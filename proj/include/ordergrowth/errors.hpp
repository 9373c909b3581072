#pragma once

#include <stdexcept>

namespace og {

// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search ran out of its exploration budget (power cap, grid cap, ...).
struct BudgetExceeded : Error {
  using Error::Error;
};

// Caller violated an operation precondition (e.g. growth relative to a
// non-positive base element).
struct DomainError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Cone construction rejected: not pointed, empty interior, or bad input.
struct ConeError : Error {
  using Error::Error;
};

// A checking oracle could not certify its claim either way.
struct OracleError : Error {
  using Error::Error;
};

// Order predicate undecidable at the configured resolution; callers must
// treat this as "unknown", never as false.
struct UncertainOrder : OracleError {
  using OracleError::OracleError;
};

struct UnsupportedFamily : Error {
  using Error::Error;
};

// Malformed element literal, model selector, or input file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace og
