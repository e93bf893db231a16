#pragma once

#include <stdexcept>
#include <string>

namespace semitree {

// Domain errors (exit status 2 in the CLI) derive from DomainError;
// malformed input (exit status 1) raises ParseError.

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "domain"; }
};

class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "range"; }
};

class ArgumentError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "argument"; }
};

class InvariantError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "invariant"; }
};

class ModelMismatch : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "model-mismatch"; }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semitree
