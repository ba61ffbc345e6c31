#pragma once

#include <stdexcept>
#include <string>

namespace chemolab {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The r-window does not exist: the discriminant bracket is not positive.
class WindowUndefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// chi is not below the existence threshold, so the bootstrap has no footing.
class NotApplicable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A field that must stay positive (v) or nonnegative (u) did not.
class PositivityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent pair (q, p) violates n/2 (1/q - 1/p) < 1.
class ExponentConditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InsufficientRows : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration; line() is 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace chemolab
