// SPDX-License-Identifier: Apache-2.0

#include "psicf/int_util.hpp"

#include <map>

#include "psicf/errors.hpp"

namespace psicf {
namespace {

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Pollard-Brent rho. n must be composite, odd, > 1.
Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    while (true) {
        Int y = rng.get_z_range(n - 1) + 1;
        Int c = rng.get_z_range(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(m, r - k);
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g;
    }
}

void factor_into(const Int& n, std::map<Int, unsigned long>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n < 0) throw DomainError("squarefree_decompose: negative input");
    if (n == 0) return {Int(0), Int(1)};
    Int rest = n, outer = 1;

    // Strip small prime squares first; most inputs never reach rho.
    for (unsigned long p = 2; p <= 4096; p += (p == 2 ? 1 : 2)) {
        Int pp = Int(p) * p;
        while (mpz_divisible_p(rest.get_mpz_t(), pp.get_mpz_t())) {
            rest /= pp;
            outer *= p;
        }
    }
    if (rest == 1 || is_probable_prime(rest)) return {rest, outer};
    if (is_perfect_square(rest)) return {Int(1), outer * isqrt(rest)};

    std::map<Int, unsigned long> factors;
    factor_into(rest, factors);
    Int squarefree = 1;
    for (const auto& [p, e] : factors) {
        for (unsigned long i = 0; i + 1 < e; i += 2) outer *= p;
        if (e % 2 == 1) squarefree *= p;
    }
    return {squarefree, outer};
}

}  // namespace psicf
