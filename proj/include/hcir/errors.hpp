#pragma once

#include <stdexcept>
#include <string>

namespace hcir {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected by a validity check. `violation()` is a stable machine-readable
/// name (e.g. "RhoOutOfRange"), `field()` the offending parameter.
class ValidationError : public Error {
public:
    ValidationError(std::string violation, std::string field, const std::string& what)
        : Error(violation + ": " + what),
          violation_(std::move(violation)),
          field_(std::move(field)) {}

    const std::string& violation() const noexcept { return violation_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string violation_;
    std::string field_;
};

/// Config text could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Query coordinate outside the grid domain.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

/// Base for runtime numerical failures (exit code 3 in the CLI).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A tridiagonal pivot fell below tolerance during a line solve.
class SingularLineError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A solver produced a non-finite value. `step()` is the 1-based time step.
class NonFiniteError : public NumericalError {
public:
    NonFiniteError(int step, const std::string& what)
        : NumericalError("non-finite value at step " + std::to_string(step) + ": " + what),
          step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

/// |dZ/dR| under the floor where F3 divides by it.
class DegenerateThetaError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hcir
