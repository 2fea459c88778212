// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace psicf {

using Int = mpz_class;
using Rat = mpq_class;

// floor(num / den), den > 0.
inline Int floor_div(const Int& num, const Int& den) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// Largest s with s*s <= n. Requires n >= 0.
inline Int isqrt(const Int& n) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int pow10(unsigned long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
}

inline Int pow2(unsigned long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    return p;
}

// Canonical rational from a possibly unnormalized pair; den may be negative.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// floor of a rational.
inline Int rat_floor(const Rat& r) {
    return floor_div(r.get_num(), r.get_den());
}

// Writes n = square * squarefree and returns {squarefree, sqrt(square)}.
// Full factorization: trial division plus Pollard-Brent rho for the tail.
std::pair<Int, Int> squarefree_decompose(const Int& n);

inline std::string to_string(const Int& n) { return n.get_str(); }

}  // namespace psicf
