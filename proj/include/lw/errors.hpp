#pragma once

#include <stdexcept>
#include <string>

namespace lw {

// Base class for all library failures so callers can catch one thing.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation
// (sqrt of a non-positive jet, tan at a pole, r <= 0, ...).
struct DomainError : Error {
    using Error::Error;
};

// Xu ^ Xv is (numerically) lightlike or zero; no Gauss map there.
struct DegeneratePointError : Error {
    using Error::Error;
};

// Adaptive integration could not continue (step underflow, guard hit
// before the requested span, frame drift beyond tolerance).
struct IntegrationError : Error {
    IntegrationError(const std::string& what, double reached_lo, double reached_hi)
        : Error(what), reached_lo(reached_lo), reached_hi(reached_hi) {}
    double reached_lo;
    double reached_hi;
};

// A precondition stated by the caller does not hold (kappa crossing zero,
// guard non-positive at the initial state, bad frame, ...).
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace lw
