// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <utility>

#include "psicf/int_util.hpp"

namespace psicf {

// Caps on how hard a comparison or rendering is allowed to work before it
// reports Undecided instead of an answer.
struct RefinementBudget {
    long max_digits = 10000;    // CF terms a refiner may consume
    long max_bits = 1 << 20;    // working-precision cap in bits
};

struct Interval {
    Rat lo, hi;

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

// A stateful source that can tighten a rational enclosure of one real value.
// Single-writer: refinement mutates internal state, concurrent refiners over
// the same object are not allowed.
class Refiner {
public:
    virtual ~Refiner() = default;

    // Attempts one tightening step. Returns false once the source is
    // exhausted or the budget stops it; current() stays valid either way.
    virtual bool refine_step(const RefinementBudget& budget) = 0;

    virtual Interval current() const = 0;

    // CF terms consumed so far, for budget accounting.
    virtual long digits_consumed() const { return 0; }
};

// A real number known only through a refinable enclosure.
class IntervalReal {
public:
    explicit IntervalReal(std::shared_ptr<Refiner> refiner)
        : refiner_(std::move(refiner)) {}

    Interval current() const { return refiner_->current(); }
    long digits_consumed() const { return refiner_->digits_consumed(); }

    bool refine(const RefinementBudget& budget) { return refiner_->refine_step(budget); }

    // Refines until width <= target or the source gives up. Returns whether
    // the target was reached.
    bool refine_to_width(const Rat& target, const RefinementBudget& budget) {
        while (current().width() > target) {
            if (!refine(budget)) return false;
        }
        return true;
    }

private:
    std::shared_ptr<Refiner> refiner_;
};

}  // namespace psicf
