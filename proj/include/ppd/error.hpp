#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppd {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A tunable outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Evaluation at a point where the quantity is undefined (polar singularity, zero distance).
class DomainError : public Error {
public:
    using Error::Error;
};

// A file that cannot be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ppd
