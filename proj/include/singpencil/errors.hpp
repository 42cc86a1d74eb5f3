#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singpencil {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ZeroMatrix : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InsufficientTrials : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The QZ backend failed or produced residuals inconsistent with a regular pencil.
class SingularPencilSuspected : public Error {
 public:
  using Error::Error;
};

/// Kernel dimension at a supposed eigenvalue does not match k+1.
class NotSimpleOrWrongRank : public Error {
 public:
  using Error::Error;
};

/// V*X1 is numerically singular.
class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

/// No admissible random draw was found within the resample limit.
class GenericityFailure : public Error {
 public:
  using Error::Error;
};

class DistinctnessFailure : public GenericityFailure {
 public:
  using GenericityFailure::GenericityFailure;
};

class IllConditionedDisguise : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues could not be paired unambiguously across methods.
class MatchFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace singpencil
