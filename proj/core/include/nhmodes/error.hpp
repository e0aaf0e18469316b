#pragma once

#include <stdexcept>
#include <string>

namespace nhmodes {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operator/state shapes that do not fit together, or a truncation below two levels.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A builder was asked for a model outside its admissible domain.
class ModelError : public Error {
public:
    using Error::Error;
};

// Non-finite values or a collapsed trace during time stepping.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, long step)
        : Error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

// A reduced density matrix with genuinely negative eigenvalues.
class ReducedStateError : public Error {
public:
    using Error::Error;
};

// An expectation value that should be real carried a large imaginary part.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace nhmodes
