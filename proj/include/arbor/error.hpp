#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

/*
 * Every failure raised by the library carries a short machine-readable class
 * (e.g. "parse", "input", "invariant") next to the human readable message.
 */
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// malformed caller input: bad ids, non-tree edge lists, dimension mismatches
class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error("input", message) {}
};

// text input that could not be parsed; message names the offending line
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message)
        : Error("parse", source + ":" + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// a structural property the algorithm relies on does not hold for the input
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& message) : Error("invariant", message) {}
};

// an oracle refused an instance that exceeds its configured size budget
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& message) : Error("budget", message) {}
};

}
