#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace factorsearch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadShape : public Error {
public:
    using Error::Error;
};

/// A table that violates a group axiom. When the failure is an
/// associativity violation the offending triple is carried along.
class NotAGroup : public Error {
public:
    explicit NotAGroup(const std::string& what,
                       std::optional<std::array<int, 3>> triple = std::nullopt)
        : Error(what), triple_(triple) {}

    const std::optional<std::array<int, 3>>& triple() const noexcept { return triple_; }

private:
    std::optional<std::array<int, 3>> triple_;
};

class UnknownSpec : public Error {
public:
    UnknownSpec(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ProfileMismatch : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class PositionOutOfRange : public Error {
public:
    using Error::Error;
};

class NotAFactorization : public Error {
public:
    using Error::Error;
};

/// A certificate failed re-verification; check() names the first failing check
/// ("group", "sizes", "is_factorization", or a lemma identifier).
class BadCertificate : public Error {
public:
    BadCertificate(std::string check, const std::string& detail)
        : Error("bad certificate: " + check + ": " + detail), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

}  // namespace factorsearch
