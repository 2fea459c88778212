// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace psicf {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed spec text; carries the offset of the first bad character.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Structurally invalid value (d < 0, zero denominator, ...).
struct DomainError : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// A comparison that had to be decided could not be, within budget.
struct UndecidedComparison : Error {
    using Error::Error;
};

// A digit source backed by a finite enclosure ran out of certified digits.
struct ExhaustedEnclosure : Error {
    using Error::Error;
};

// psi-family operations only accept irrational inputs.
struct RationalInput : Error {
    RationalInput() : Error("operation requires an irrational number") {}
};

// The two independent computations of the same quantity provably differ.
struct CrossCheckFailure : Error {
    using Error::Error;
};

// The brute-force scan could not disambiguate even after raising precision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

}  // namespace psicf
