// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>

#include "psicf/interval.hpp"
#include "psicf/surd.hpp"

namespace psicf {

// Tagged exact value: rational, quadratic surd, or refinable enclosure.
using ExactReal = std::variant<Rat, Surd, IntervalReal>;

enum class Cmp { Less, Equal, Greater, Undecided };

inline bool is_rational(const ExactReal& x) { return std::holds_alternative<Rat>(x); }
inline bool is_surd(const ExactReal& x) { return std::holds_alternative<Surd>(x); }
inline bool is_interval(const ExactReal& x) {
    return std::holds_alternative<IntervalReal>(x);
}

ExactReal canonicalize_surd(const Int& a, const Int& b, const Int& d, const Int& c);

ExactReal er_add(const ExactReal& x, const ExactReal& y);
ExactReal er_sub(const ExactReal& x, const ExactReal& y);
ExactReal er_mul(const ExactReal& x, const ExactReal& y);
// Throws DivisionByZero / UndecidedComparison if y's sign cannot be settled.
ExactReal er_div(const ExactReal& x, const ExactReal& y,
                 const RefinementBudget& budget = {});
ExactReal er_neg(const ExactReal& x);
ExactReal er_abs(const ExactReal& x, const RefinementBudget& budget = {});
ExactReal er_inv(const ExactReal& x, const RefinementBudget& budget = {});

ExactReal er_from_int(long v);
ExactReal er_from_rat(const Rat& r);

// Total comparison protocol. Exact for rational/surd pairs; interval operands
// are refined alternately until the enclosures separate or the budget runs
// out (-> Undecided). Equal is only ever returned when provable exactly.
Cmp exact_cmp(const ExactReal& x, const ExactReal& y,
              const RefinementBudget& budget = {});

// Sign of x: -1, 0, +1. Throws UndecidedComparison when the budget runs out.
int er_sign(const ExactReal& x, const RefinementBudget& budget = {});

// Rational enclosure with width <= 2^-bits where the source allows; interval
// sources may stop wider when exhausted.
Interval enclosure_at(const ExactReal& x, unsigned long bits,
                      const RefinementBudget& budget = {});

// Decimal string with `digits` fractional digits, rounded to nearest; the
// certified error is at most one unit in the last place.
std::string to_decimal(const ExactReal& x, unsigned long digits,
                       const RefinementBudget& budget = {});

// Decimal string truncated toward zero after `digits` fractional digits; every
// printed digit is certified, so prefixes are stable as `digits` grows.
std::string decimal_truncate(const ExactReal& x, unsigned long digits,
                             const RefinementBudget& budget = {});

// Exact human/machine-readable rendering ("p/q", "(a+b*sqrt(d))/c", "[lo,hi]").
std::string er_render_exact(const ExactReal& x);

}  // namespace psicf
