#pragma once

#include <stdexcept>
#include <string>

namespace lbv {

/// Raised when an input violates a documented precondition (bad index,
/// malformed function, refused computation). The CLI maps these to exit 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArgumentError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ConstructionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ExactModeRefused : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegenerateModulus : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CorollaryInapplicable : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A well-posed computation reached a negative outcome. The CLI maps these
/// to exit 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceNotWitnessed : public DomainError {
 public:
  using DomainError::DomainError;
};

class CriterionNotViolated : public DomainError {
 public:
  using DomainError::DomainError;
};

class CertificationFailure : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace lbv
