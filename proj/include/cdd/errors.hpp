// errors.hpp: exception types shared by the cdd headers

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdd {

// Bad argument to a library call (index out of range, non-normalized state, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a special function.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A quantity that must vanish by construction did not (e.g. imaginary residue of a real trace).
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Inconsistent numerical or experiment configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntegrationDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cdd
