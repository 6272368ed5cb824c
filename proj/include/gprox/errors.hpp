#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gprox {

// Precondition failures on valid inputs (empty sets, k >= 1, foreign points).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed inputs that are not even well-formed candidates (non-square or
// non-finite distance matrices).
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an operation needs sample points the instance does not carry.
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Map evaluation left the domain part-way through an orbit.
class OrbitError : public DomainError {
public:
    OrbitError(const std::string& what, std::size_t last_valid_index)
        : DomainError(what), last_valid_(last_valid_index) {}

    std::size_t last_valid_index() const noexcept { return last_valid_; }

private:
    std::size_t last_valid_;
};

// The per-step hypothesis of the alternating two-map scheme failed.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::string field)
        : std::runtime_error("line " + std::to_string(line) + " (" + field + "): " + what),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

} // namespace gprox
