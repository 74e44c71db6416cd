#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsym {

/// Base of every error raised by the library. The CLI maps each subclass to
/// an exit code, so new kinds must be added to cli.cpp as well.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Malformed input outside the expression grammar: problem files, CLI values.
class InputError : public Error {
public:
  using Error::Error;
};

class EvalError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ZeroDenominator : public DomainError {
public:
  using DomainError::DomainError;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class ParityViolation : public Error {
public:
  using Error::Error;
};

class OutsideValidity : public DomainError {
public:
  using DomainError::DomainError;
};

class CaseNotApplicable : public Error {
public:
  using Error::Error;
};

class EmptyDomain : public Error {
public:
  using Error::Error;
};

class StepFailure : public Error {
public:
  using Error::Error;
};

} // namespace bsym
