#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Exhaustive work would exceed the configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what + " (requires " + std::to_string(required) + " work units, budget " +
                std::to_string(budget) + ")"),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

} // namespace detail
} // namespace rankforge
