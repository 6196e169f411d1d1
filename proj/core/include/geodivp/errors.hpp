#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace geodivp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid ellipsoid or problem parameters; `field()` names the offender.
class ConstructionError : public Error {
 public:
  ConstructionError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Input outside the mathematical domain of an operation (e.g. far off-surface points).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The geodetic formulation was asked to evaluate tan(phi) at or beyond a pole.
class PoleSingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Zero direction vector where an azimuth was requested.
class DegenerateStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// (n, p) not orthonormal within tolerance when building q.
class FrameError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Runge-Kutta stage produced a non-finite component.
class NumericOverflowError : public Error {
 public:
  explicit NumericOverflowError(std::size_t step)
      : Error("non-finite state at integration step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Malformed test-set line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        detail_(what) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace geodivp
