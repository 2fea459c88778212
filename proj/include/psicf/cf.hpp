// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "psicf/number_spec.hpp"

namespace psicf {

// Why a digit stream stopped producing.
enum class DigitEnd {
    None,       // still running
    Finite,     // rational / finite CF: expansion genuinely ends
    Exhausted,  // decimal enclosure ran out of certified digits
};

// Single-consumer cursor over the CF digits of a NumberSpec. Independent
// cursors over the same spec are safe in parallel; one cursor is not.
class DigitCursor {
public:
    explicit DigitCursor(const NumberSpec& spec);
    ~DigitCursor();
    DigitCursor(DigitCursor&&) noexcept;
    DigitCursor& operator=(DigitCursor&&) noexcept;

    // Next partial quotient, or nullopt when the stream ends; end_kind() says
    // whether that was a finite expansion or an exhausted enclosure.
    std::optional<Int> next();
    DigitEnd end_kind() const;
    long emitted() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// (n, a_n, r_n, q_n) with the standard recurrences and
// (r_{-1}, q_{-1}) = (1, 0), (r_0, q_0) = (a_0, 1).
struct ConvergentRecord {
    long n;
    Int a;
    Int r;
    Int q;
};

// Lazily extended convergent table over one spec.
class ConvergentTable {
public:
    explicit ConvergentTable(const NumberSpec& spec);

    // Record for index n, or nullopt when the digit stream ended first.
    std::optional<ConvergentRecord> at(long n);

    // Largest index currently materialized (-1 when none could be).
    long grown() const { return static_cast<long>(records_.size()) - 1; }

    DigitEnd end_kind() const { return end_; }

private:
    bool grow();

    DigitCursor cursor_;
    std::vector<ConvergentRecord> records_;
    Int r_m1_{1}, q_m1_{0};  // index k-1 (seeded at -1)
    Int r_m2_{0}, q_m2_{1};  // index k-2 (seeded at -2)
    DigitEnd end_ = DigitEnd::None;
};

// Finite CF of p/q by the Euclidean algorithm; canonical (never ends in 1
// except the single-term case).
std::vector<Int> cf_of_rational(const Int& p, const Int& q);

// Eventually periodic expansion; pre may be empty for purely periodic surds.
struct CfExpansion {
    std::vector<Int> pre;
    std::vector<Int> period;
};
CfExpansion cf_of_surd(const Surd& s);

// Value of a finite CF [digits[0]; digits[1], ...].
Rat eval_finite_cf(const std::vector<Int>& digits);

// Exact value of the described number: Rat / Surd for exact sources, an
// enclosure-backed IntervalReal for decimal sources.
ExactReal spec_value(const NumberSpec& spec);

// Complete quotient alpha_n = [a_n; a_{n+1}, ...] for n >= 1. Exact surd for
// surd and periodic-CF sources, rational for finite sources, enclosure
// otherwise. Throws ExhaustedEnclosure when digit a_n cannot be certified.
ExactReal tail_value(const NumberSpec& spec, long n);

// alpha_n^* = [0; a_n, ..., a_1] = q_{n-1}/q_n, exact.
Rat reversed_tail(const NumberSpec& spec, long n);

// Same, recomputed from the reversed digit list (cross-check path).
Rat reversed_tail_by_digits(const NumberSpec& spec, long n);

// Bundles a spec with its lazily grown tables; the working handle the psi and
// theorem layers use. Mutable because tables grow; not shareable across
// threads without external synchronization.
class NumberContext {
public:
    explicit NumberContext(NumberSpec spec);

    const NumberSpec& spec() const { return spec_; }
    ConvergentTable& convergents() { return table_; }
    const ExactReal& value();
    ExactReal tail(long n);

private:
    NumberSpec spec_;
    ConvergentTable table_;
    std::optional<ExactReal> value_;
    std::vector<std::optional<ExactReal>> tail_cache_;
};

}  // namespace psicf
