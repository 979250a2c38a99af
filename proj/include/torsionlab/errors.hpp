#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torsionlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands come from different group contexts.
class ContextError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A resource cap (ball size, stage budget, pattern budget) was hit.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::uint64_t attained)
        : Error(what), attained_(attained) {}
    /// Largest radius / stage fully completed before the cap.
    std::uint64_t attained() const noexcept { return attained_; }

private:
    std::uint64_t attained_;
};

/// Order search exceeded its cap without the element being provably of infinite order.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An automaton rule table has no entry for a reachable local view.
class SpecError : public Error {
public:
    using Error::Error;
};

/// An oracle prefix is too short to answer a query.
class OracleShortage : public Error {
public:
    OracleShortage(const std::string& what, std::uint64_t needed)
        : Error(what), needed_(needed) {}
    std::uint64_t needed() const noexcept { return needed_; }

private:
    std::uint64_t needed_;
};

/// A word-problem query fell beyond the supplied oracle prefix.
class OracleExhausted : public OracleShortage {
public:
    OracleExhausted(const std::string& what, std::uint64_t index) : OracleShortage(what, index + 1), index_(index) {}
    std::uint64_t index() const noexcept { return index_; }

private:
    std::uint64_t index_;
};

class RateViolation : public Error {
public:
    using Error::Error;
};

}  // namespace torsionlab
