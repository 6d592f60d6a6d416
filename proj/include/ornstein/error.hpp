#pragma once

#include <stdexcept>
#include <string>

namespace ornstein {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed operator text. `position` is a 0-based offset into the parsed
// string; `line` is 0 unless the error came from a file reader.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
        : Error(what), position(position), line(line) {}
    std::size_t position;
    std::size_t line;
};

// Structurally valid input that violates a contract (dimension mismatch,
// mixed parity where a single parity is required, missing pattern, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Numerical procedure failed to produce a usable result (LP infeasible at
// tolerance, optimizer divergence, degenerate denominator).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

} // namespace ornstein
