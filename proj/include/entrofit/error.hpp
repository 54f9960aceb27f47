#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace entrofit {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or contract-violating input (bad series, bad ranges, bad files).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

// beta*phi + alpha <= 0: the occupation law diverges. Marks the
// condensation-like boundary; usually means a bad fit upstream.
class DivergentOccupation : public DomainError {
public:
    using DomainError::DomainError;
};

// Target value above the supremum of the stationarity curve; no occupation
// number satisfies the equation.
class NoSolution : public Error {
public:
    using Error::Error;
};

// Gini above 1/3: no uniform distribution reproduces it.
class NoSymmetricEquivalent : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class SingularRegression : public Error {
public:
    using Error::Error;
};

// Exact-count request beyond the desk-scale caps or 64-bit range.
class TooLarge : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Occupation above one per state under exclusion statistics.
class ExclusionViolation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Pipeline failure tagged with the stage it came from.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& msg)
        : Error(stage + ": " + msg), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace entrofit
