#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diolic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different variable counts, ranks or shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on the mathematical input failed (e.g. a degree -1 object
/// requested for a module of rank != 1, an operator of too high order).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `position` is a 0-based character offset into the
/// parsed string, or npos when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position = std::string::npos)
        : Error(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A configured dimension cap would be exceeded.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::string quantity, std::size_t value,
                  std::size_t cap)
        : Error(what), quantity_(std::move(quantity)), value_(value), cap_(cap) {}
    const std::string& quantity() const noexcept { return quantity_; }
    std::size_t value() const noexcept { return value_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::string quantity_;
    std::size_t value_;
    std::size_t cap_;
};

/// Two independent computation routes disagreed. Never expected; signals a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace diolic
