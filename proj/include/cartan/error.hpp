#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cartan {

/// Base of all errors raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Division by zero, mixed-field operands and similar arithmetic misuse.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// Malformed text or JSON input (distinct from mathematical invalidity).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Mathematically invalid input; carries one line per failed check.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> witnesses);

    const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

private:
    std::vector<std::string> witnesses_;
};

} // namespace cartan
