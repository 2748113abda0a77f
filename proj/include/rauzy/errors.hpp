#ifndef RAUZY_ERRORS_HPP
#define RAUZY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rauzy {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number (0 when not tied to a line).
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& what)
        : error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid argument values (letter out of range, bad sequence spec, ...).
class input_error : public error {
public:
    using error::error;
};

/// A mathematical precondition does not hold (non-primitive, non-Pisot, ...).
class domain_error : public error {
public:
    using error::error;
};

/// Exact integer arithmetic overflowed.
class arithmetic_error : public error {
public:
    using error::error;
};

class convergence_error : public error {
public:
    using error::error;
};

/// A numerical verdict is too close to a decision boundary to be trusted.
class indeterminate_error : public error {
public:
    using error::error;
};

class unsupported_error : public error {
public:
    using error::error;
};

/// A size or iteration budget was exhausted.
class resource_error : public error {
public:
    using error::error;
};

} // namespace rauzy

#endif // RAUZY_ERRORS_HPP
