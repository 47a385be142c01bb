#pragma once

#include <stdexcept>
#include <string>

namespace cqdyn {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// csum1*csum2 - cm^2 <= 0, or a MEMS-time prediction with E_J1*E_J2 == 0.
struct DegenerateDenominatorError : Error {
    using Error::Error;
};

// A matrix that must be positive semidefinite has an eigenvalue below tolerance.
struct NotPositiveSemidefiniteError : Error {
    using Error::Error;
};

// The Jacobi sweep failed to reach the off-diagonal threshold.
struct NonConvergenceError : Error {
    using Error::Error;
};

struct NegativeTimeError : Error {
    using Error::Error;
};

// RK4 step violates the dt * ||H|| stability guard.
struct StepTooLargeError : Error {
    using Error::Error;
};

// Kraus truncation tail bound above the requested tolerance.
struct TruncationError : Error {
    using Error::Error;
};

struct InvalidAxisError : Error {
    using Error::Error;
};

// Bad values for domain types (gate charges out of range, t_end <= t_start, ...).
struct ValidationError : Error {
    using Error::Error;
};

// CSV / state-file reading problems.
struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace cqdyn
