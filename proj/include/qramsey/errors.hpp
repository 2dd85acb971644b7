#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qramsey {

// Caller passed something outside an operation's documented range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mathematically undefined input (e.g. incomparable interval endpoints).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Text or JSON that does not match the expected format.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition stated by an operation's contract was not met.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An internal self-check failed. Seeing one of these is a bug.
class DefectError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Unknown command or check name.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Explicit node-count or size cap exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t nodes = 0)
        : std::runtime_error(what), nodes_(nodes) {}

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::uint64_t nodes_;
};

}  // namespace qramsey
