#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sftlab {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad matrix shape, bad JSON, unknown names.
class InputError : public Error {
public:
    using Error::Error;
};

class ZeroMatrix : public InputError {
public:
    ZeroMatrix() : InputError("matrix has no nonzero entry") {}
};

class InvalidMatrix : public InputError {
public:
    using InputError::InputError;
};

class ReducibleInput : public InputError {
public:
    using InputError::InputError;
};

class NilpotentMatrix : public InputError {
public:
    NilpotentMatrix() : InputError("matrix is nilpotent (eventual range is zero)") {}
};

class WordTooShort : public InputError {
public:
    using InputError::InputError;
};

class InadmissibleWord : public InputError {
public:
    using InputError::InputError;
};

class ShiftMismatch : public InputError {
public:
    using InputError::InputError;
};

class UnknownBuiltin : public InputError {
public:
    explicit UnknownBuiltin(const std::string& name) : InputError("unknown builtin '" + name + "'") {}
};

class ParseError : public InputError {
public:
    ParseError(std::string location, const std::string& what)
        : InputError(location + ": " + what), location_(std::move(location)) {}
    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// Composition or enumeration would materialize more windows than allowed.
class WindowBudgetExceeded : public Error {
public:
    WindowBudgetExceeded(std::uint64_t needed, std::uint64_t budget)
        : Error("window budget exceeded: need " + std::to_string(needed) + " windows, budget " +
                std::to_string(budget)),
          needed_(needed), budget_(budget) {}
    std::uint64_t needed() const noexcept { return needed_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t needed_;
    std::uint64_t budget_;
};

/// Two codes claimed to be mutually inverse are not; carries a window on which they fail.
class NotInverse : public Error {
public:
    NotInverse(std::string what, std::vector<std::uint32_t> witness)
        : Error(std::move(what)), witness_(std::move(witness)) {}
    const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }

private:
    std::vector<std::uint32_t> witness_;
};

/// Semi-decision failure: the code is not invertible or needs a larger inverse window.
class NotInvertibleWithin : public Error {
public:
    explicit NotInvertibleWithin(int r_max)
        : Error("no inverse found with window radius <= " + std::to_string(r_max)), r_max_(r_max) {}
    int r_max() const noexcept { return r_max_; }

private:
    int r_max_;
};

class NotInvariant : public Error {
public:
    NotInvariant(std::string what, std::vector<std::uint32_t> witness)
        : Error(std::move(what)), witness_(std::move(witness)) {}
    const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }

private:
    std::vector<std::uint32_t> witness_;
};

/// A proved identity failed to hold; always an implementation bug.
class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

class InconsistentSystem : public InternalInvariantViolation {
public:
    using InternalInvariantViolation::InternalInvariantViolation;
};

class NonPositiveRatio : public InternalInvariantViolation {
public:
    using InternalInvariantViolation::InternalInvariantViolation;
};

class NonMonic : public InputError {
public:
    NonMonic() : InputError("polynomial is not monic") {}
};

class ZeroConstantTerm : public InputError {
public:
    ZeroConstantTerm() : InputError("polynomial has zero constant term") {}
};

class PreconditionFailed : public InputError {
public:
    using InputError::InputError;
};

class NotPrimitive : public InputError {
public:
    NotPrimitive() : InputError("matrix is not primitive") {}
};

}  // namespace sftlab
