// SPDX-License-Identifier: Apache-2.0

#include "psicf/oracle.hpp"

#include <mpfr.h>
#include <omp.h>

#include <utility>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_{};
};

Rat mpfr_to_rat(mpfr_srcptr v) {
    if (mpfr_zero_p(v)) return Rat(0);
    Int mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    if (e >= 0) return Rat(mant * pow2(static_cast<unsigned long>(e)));
    return make_rat(mant, pow2(static_cast<unsigned long>(-e)));
}

// Certified [lo, hi] containing the spec's value at the given precision.
// Evaluates each source directly (mpfr sqrt, exact division, consecutive
// convergents of the given digit list); no dependence on the psi pipeline.
struct XiEnclosure {
    Mpfr lo, hi;

    XiEnclosure(const NumberSpec& spec, mpfr_prec_t prec) : lo(prec), hi(prec) {
        if (const auto* r = std::get_if<RationalSource>(&spec.source())) {
            mpfr_set_q(lo.get(), r->value.get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(hi.get(), r->value.get_mpq_t(), MPFR_RNDU);
            return;
        }
        if (const auto* s = std::get_if<SurdSource>(&spec.source())) {
            set_from_surd(s->value, prec);
            return;
        }
        if (const auto* cf = std::get_if<ExplicitCF>(&spec.source())) {
            set_from_digits(*cf, prec);
            return;
        }
        const auto& de = std::get<DecimalEnclosure>(spec.source());
        mpfr_set_q(lo.get(), de.lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), de.hi.get_mpq_t(), MPFR_RNDU);
    }

private:
    void set_from_surd(const Surd& s, mpfr_prec_t prec) {
        Mpfr sq_lo(prec), sq_hi(prec), t(prec);
        mpfr_set_z(t.get(), s.d().get_mpz_t(), MPFR_RNDD);
        mpfr_sqrt(sq_lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_z(t.get(), s.d().get_mpz_t(), MPFR_RNDU);
        mpfr_sqrt(sq_hi.get(), t.get(), MPFR_RNDU);
        // b * sqrt(d): direction depends on the sign of b.
        Mpfr n_lo(prec), n_hi(prec);
        if (s.b() > 0) {
            mpfr_mul_z(n_lo.get(), sq_lo.get(), s.b().get_mpz_t(), MPFR_RNDD);
            mpfr_mul_z(n_hi.get(), sq_hi.get(), s.b().get_mpz_t(), MPFR_RNDU);
        } else {
            mpfr_mul_z(n_lo.get(), sq_hi.get(), s.b().get_mpz_t(), MPFR_RNDD);
            mpfr_mul_z(n_hi.get(), sq_lo.get(), s.b().get_mpz_t(), MPFR_RNDU);
        }
        mpfr_add_z(n_lo.get(), n_lo.get(), s.a().get_mpz_t(), MPFR_RNDD);
        mpfr_add_z(n_hi.get(), n_hi.get(), s.a().get_mpz_t(), MPFR_RNDU);
        mpfr_div_z(lo.get(), n_lo.get(), s.c().get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(hi.get(), n_hi.get(), s.c().get_mpz_t(), MPFR_RNDU);
    }

    void set_from_digits(const ExplicitCF& cf, mpfr_prec_t prec) {
        // Two consecutive convergents bracket the value; grow until the gap
        // drops below the working precision (or the digits end).
        Int r1 = 1, q1 = 0, r2 = 0, q2 = 1;
        Int gap_bound = pow2(static_cast<unsigned long>(prec) + 8);
        std::size_t i = 0;
        bool more = true;
        while (more) {
            Int a;
            if (i < cf.pre.size()) a = cf.pre[i];
            else if (!cf.period.empty())
                a = cf.period[(i - cf.pre.size()) % cf.period.size()];
            else break;
            Int r = a * r1 + r2, q = a * q1 + q2;
            r2 = std::exchange(r1, std::move(r));
            q2 = std::exchange(q1, std::move(q));
            ++i;
            // |c_k - c_{k-1}| = 1/(q_k q_{k-1})
            if (q1 * q2 > gap_bound) more = false;
        }
        Rat c_last = q1 != 0 ? make_rat(r1, q1) : Rat(0);
        Rat c_prev = q2 != 0 ? make_rat(r2, q2) : c_last + 1;
        Rat vlo = std::min(c_last, c_prev), vhi = std::max(c_last, c_prev);
        if (cf.period.empty() && i >= cf.pre.size()) vlo = vhi = c_last;  // exact
        mpfr_set_q(lo.get(), vlo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), vhi.get_mpq_t(), MPFR_RNDU);
    }
};

// Enclosure of ||y|| for y in [x*xi_lo, x*xi_hi]. Returns false when the
// scaled interval is too wide to certify a distance.
struct DistScratch {
    Mpfr u, v, w1, w2, a1, a2, b1, b2;
    explicit DistScratch(mpfr_prec_t prec)
        : u(prec), v(prec), w1(prec), w2(prec), a1(prec), a2(prec), b1(prec), b2(prec) {}
};

bool dist_enclosure(mpfr_srcptr xi_lo, mpfr_srcptr xi_hi, unsigned long x,
                    DistScratch& s, mpfr_ptr out_lo, mpfr_ptr out_hi) {
    mpfr_mul_ui(s.u.get(), xi_lo, x, MPFR_RNDD);
    mpfr_mul_ui(s.v.get(), xi_hi, x, MPFR_RNDU);
    mpfr_sub(s.w1.get(), s.v.get(), s.u.get(), MPFR_RNDU);
    if (mpfr_cmp_d(s.w1.get(), 0.25) >= 0) return false;

    Int m;
    mpfr_get_z(m.get_mpz_t(), s.u.get(), MPFR_RNDN);
    // w1 <= y - m <= w2 with |w| < 1; dist(y, Z) = min(|w|, 1 - |w|) there.
    mpfr_sub_z(s.w1.get(), s.u.get(), m.get_mpz_t(), MPFR_RNDD);
    mpfr_sub_z(s.w2.get(), s.v.get(), m.get_mpz_t(), MPFR_RNDU);

    mpfr_abs(s.a1.get(), s.w1.get(), MPFR_RNDU);  // |w1| exact up to prec
    mpfr_abs(s.a2.get(), s.w2.get(), MPFR_RNDU);

    bool spans_zero = mpfr_sgn(s.w1.get()) <= 0 && mpfr_sgn(s.w2.get()) >= 0;
    bool spans_half = (mpfr_cmp_d(s.w1.get(), -0.5) <= 0 &&
                       mpfr_cmp_d(s.w2.get(), -0.5) >= 0) ||
                      (mpfr_cmp_d(s.w1.get(), 0.5) <= 0 &&
                       mpfr_cmp_d(s.w2.get(), 0.5) >= 0);

    if (spans_zero) {
        mpfr_set_ui(out_lo, 0, MPFR_RNDD);
    } else {
        // lower bound: min over endpoints of min(|w|, RNDD(1 - |w|))
        mpfr_ui_sub(s.b1.get(), 1, s.a1.get(), MPFR_RNDD);
        mpfr_ui_sub(s.b2.get(), 1, s.a2.get(), MPFR_RNDD);
        mpfr_min(s.b1.get(), s.b1.get(), s.a1.get(), MPFR_RNDD);
        mpfr_min(s.b2.get(), s.b2.get(), s.a2.get(), MPFR_RNDD);
        mpfr_min(out_lo, s.b1.get(), s.b2.get(), MPFR_RNDD);
        if (mpfr_sgn(out_lo) < 0) mpfr_set_ui(out_lo, 0, MPFR_RNDD);
    }
    if (spans_half) {
        mpfr_set_d(out_hi, 0.5, MPFR_RNDU);
    } else {
        mpfr_ui_sub(s.b1.get(), 1, s.a1.get(), MPFR_RNDU);
        mpfr_ui_sub(s.b2.get(), 1, s.a2.get(), MPFR_RNDU);
        mpfr_min(s.b1.get(), s.b1.get(), s.a1.get(), MPFR_RNDU);
        mpfr_min(s.b2.get(), s.b2.get(), s.a2.get(), MPFR_RNDU);
        mpfr_max(out_hi, s.b1.get(), s.b2.get(), MPFR_RNDU);
    }
    return true;
}

void check_config(const NumberSpec&, unsigned long t, const OracleConfig& cfg) {
    if (cfg.precision_bits < 64)
        throw DomainError("oracle precision must be at least 64 bits");
    if (t < 1) throw DomainError("oracle: t must be >= 1");
    if (t > cfg.t_cap)
        throw DomainError("oracle refuses t > t_cap (" + std::to_string(cfg.t_cap) +
                          ")");
}

struct ScanHit {
    unsigned long x = 0;
    Rat lo, hi;
    bool ambiguous = false;
};

// One full scan at fixed precision. parallel=false is the serial reference.
ScanHit scan_once(const NumberSpec& spec, unsigned long t, mpfr_prec_t prec,
                  bool parallel) {
    XiEnclosure xi(spec, prec);

    struct Best {
        unsigned long x = 0;
        Rat lo, hi;
        bool valid = false;
        bool failed = false;
    };

    // Pass 1: smallest upper bound wins (ties to the smaller x).
    Best best;
    int max_threads = parallel ? omp_get_max_threads() : 1;
    std::vector<Best> locals(static_cast<std::size_t>(max_threads));
#pragma omp parallel num_threads(max_threads) if (parallel)
    {
        int tid = omp_get_thread_num();
        DistScratch scratch(prec);
        Mpfr dlo(prec), dhi(prec);
        Best& mine = locals[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
        for (long xs = 1; xs <= static_cast<long>(t); ++xs) {
            auto x = static_cast<unsigned long>(xs);
            if (mine.failed) continue;
            if (!dist_enclosure(xi.lo.get(), xi.hi.get(), x, scratch, dlo.get(),
                                dhi.get())) {
                mine.failed = true;
                continue;
            }
            Rat h = mpfr_to_rat(dhi.get());
            if (!mine.valid || h < mine.hi || (h == mine.hi && x < mine.x)) {
                mine.valid = true;
                mine.x = x;
                mine.lo = mpfr_to_rat(dlo.get());
                mine.hi = std::move(h);
            }
        }
    }
    for (const Best& b : locals) {
        if (b.failed) return {0, {}, {}, true};
        if (!b.valid) continue;
        if (!best.valid || b.hi < best.hi || (b.hi == best.hi && b.x < best.x))
            best = b;
    }

    // Pass 2: the argmin is certified once no other x can reach below best.hi.
    long contenders = 0;
#pragma omp parallel num_threads(max_threads) if (parallel) reduction(+ : contenders)
    {
        DistScratch scratch(prec);
        Mpfr dlo(prec), dhi(prec);
#pragma omp for schedule(static)
        for (long xs = 1; xs <= static_cast<long>(t); ++xs) {
            auto x = static_cast<unsigned long>(xs);
            if (x == best.x) continue;
            if (!dist_enclosure(xi.lo.get(), xi.hi.get(), x, scratch, dlo.get(),
                                dhi.get())) {
                ++contenders;
                continue;
            }
            if (mpfr_to_rat(dlo.get()) <= best.hi) ++contenders;
        }
    }
    return {best.x, best.lo, best.hi, contenders > 0};
}

OracleResult brute_psi_impl(const NumberSpec& spec, unsigned long t,
                            const OracleConfig& cfg, bool parallel) {
    check_config(spec, t, cfg);
    mpfr_prec_t prec = cfg.precision_bits;
    for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
        ScanHit hit = scan_once(spec, t, prec, parallel);
        if (!hit.ambiguous) return {hit.x, hit.lo, hit.hi, prec};
    }
    throw PrecisionExhausted("brute_psi: argmin still ambiguous after 8x precision");
}

}  // namespace

OracleResult brute_psi(const NumberSpec& spec, unsigned long t,
                       const OracleConfig& cfg) {
    return brute_psi_impl(spec, t, cfg, /*parallel=*/true);
}

OracleResult brute_psi_serial(const NumberSpec& spec, unsigned long t,
                              const OracleConfig& cfg) {
    return brute_psi_impl(spec, t, cfg, /*parallel=*/false);
}

std::vector<OracleResult> brute_psi_prefix(const NumberSpec& spec,
                                           unsigned long t_max,
                                           const OracleConfig& cfg) {
    check_config(spec, t_max, cfg);
    mpfr_prec_t prec = cfg.precision_bits;
    for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
        XiEnclosure xi(spec, prec);
        DistScratch scratch(prec);
        Mpfr dlo(prec), dhi(prec);
        std::vector<OracleResult> out;
        out.reserve(t_max);
        OracleResult best;
        bool ok = true;
        for (unsigned long x = 1; x <= t_max && ok; ++x) {
            if (!dist_enclosure(xi.lo.get(), xi.hi.get(), x, scratch, dlo.get(),
                                dhi.get())) {
                ok = false;
                break;
            }
            Rat lo = mpfr_to_rat(dlo.get()), hi = mpfr_to_rat(dhi.get());
            if (x == 1 || hi < best.lo) {
                best = {x, std::move(lo), std::move(hi), prec};
            } else if (lo <= best.hi) {
                ok = false;  // overlap: the running argmin is not certified
                break;
            }
            out.push_back(best);
        }
        if (ok) return out;
    }
    throw PrecisionExhausted("brute_psi_prefix: ambiguous even after 8x precision");
}

}  // namespace psicf
