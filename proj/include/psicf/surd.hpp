// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <variant>

#include "psicf/int_util.hpp"

namespace psicf {

class Surd;

// Result of canonicalization: a genuinely irrational surd, or the rational it
// collapsed to (b = 0, d a perfect square, ...).
using SurdValue = std::variant<Rat, Surd>;

// (a + b*sqrt(d))/c with d squarefree >= 2, c > 0, gcd(a, b, c) = 1, b != 0.
// Always irrational. Construct through canonicalize_surd_parts.
class Surd {
public:
    Surd(Int a, Int b, Int d, Int c)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {}

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& d() const { return d_; }
    const Int& c() const { return c_; }

    int sign() const;
    Int floor() const;
    Surd negated() const { return Surd(-a_, -b_, d_, c_); }
    Surd abs_value() const { return sign() < 0 ? negated() : *this; }

    // Conjugate (a - b*sqrt(d))/c.
    Surd conjugate() const { return Surd(a_, -b_, d_, c_); }

    // Rational enclosure with width <= |b|/c * 2^-bits.
    std::pair<Rat, Rat> enclosure(unsigned long bits) const;

    bool operator==(const Surd& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_ && c_ == o.c_;
    }

    std::string to_string() const;

private:
    Int a_, b_, d_, c_;
};

// Canonicalizes (a + b*sqrt(d))/c. Rejects c = 0 and d < 0.
SurdValue canonicalize_surd_parts(Int a, Int b, Int d, Int c);

// Exact sign of (a + b*sqrt(d))/c for raw (non-canonical) parts.
// Requires c != 0 and d >= 0; d need not be squarefree.
int sign_surd_parts(const Int& a, const Int& b, const Int& d, const Int& c);

// Exact floor of (a + b*sqrt(d))/c for raw parts with c > 0, d >= 2 not a
// perfect square, b != 0.
Int floor_surd_parts(const Int& a, const Int& b, const Int& d, const Int& c);

// Field arithmetic in Q(sqrt(d)). Operands must share d. Results canonicalize
// and may collapse to Rat.
SurdValue surd_add(const Surd& x, const Surd& y);
SurdValue surd_sub(const Surd& x, const Surd& y);
SurdValue surd_mul(const Surd& x, const Surd& y);
SurdValue surd_div(const Surd& x, const Surd& y);
SurdValue surd_add_rat(const Surd& x, const Rat& r);
SurdValue surd_mul_rat(const Surd& x, const Rat& r);
Surd surd_inv(const Surd& x);

// Exact three-way comparisons (-1, 0, +1). Same-field or surd/rational only.
int surd_cmp(const Surd& x, const Surd& y);          // requires x.d() == y.d()
int surd_cmp_rat(const Surd& x, const Rat& r);       // sign of x - r

}  // namespace psicf
