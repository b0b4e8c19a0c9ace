#pragma once

#include <stdexcept>
#include <string>

namespace duostra {

/// Input text could not be parsed. `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("parse error (line " + std::to_string(line) + "): " + what),
          line_(line) {}

    explicit ParseError(const std::string& what)
        : std::runtime_error("parse error: " + what), line_(0) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Structurally well-formed input that violates a semantic requirement
/// (bad qubit index, disconnected device, unsupported gate, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Circuit does not fit on the device.
class CapacityError : public ValidationError {
public:
    explicit CapacityError(const std::string& what) : ValidationError(what) {}
};

/// A routing plan no longer matches the state it is applied to.
class StalePlanError : public std::logic_error {
public:
    explicit StalePlanError(const std::string& what) : std::logic_error(what) {}
};

/// A mapped result failed its replay check.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace duostra
