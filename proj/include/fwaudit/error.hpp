#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fwaudit {

// Two boxes (or a box and a domain) disagree on the number of attributes.
class ArityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A value, interval, packet or ruleset does not fit its DomainSpec.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller-side precondition that is checked rather than trusted.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The exhaustive oracle refuses domains larger than its packet budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace fwaudit
