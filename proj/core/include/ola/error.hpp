#pragma once

#include <stdexcept>
#include <string>

namespace ola {

/// Invalid or inconsistent configuration (bad kind, dimension mismatch, G < 2, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an operation's precondition, e.g. an empty query buffer.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// Internal state that must be unreachable, e.g. an empty version space.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Rejection sampling ran out of attempts before collecting enough points.
class SamplingExhausted : public std::runtime_error {
public:
    explicit SamplingExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A CSV file is missing a required column or has no rows.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ola
