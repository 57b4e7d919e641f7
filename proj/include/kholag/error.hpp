#pragma once

#include <stdexcept>
#include <string>

namespace kholag {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text/JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was asked for outside its domain (p >= q, multi-component
// s-invariant, non-braid diagram for transverse data, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure: d^2 != 0, a chain map that does not commute,
// a transverse representative that is not a cycle.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// filtration_grading() of a class that is zero in homology.
class ZeroClassError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace kholag
