// SPDX-License-Identifier: Apache-2.0

#include "psicf/psi.hpp"

#include "psicf/errors.hpp"

namespace psicf {

namespace {

void require_irrational(const NumberContext& ctx) {
    if (ctx.spec().is_rational_value()) throw RationalInput();
}

ConvergentRecord record_or_throw(NumberContext& ctx, long n) {
    auto rec = ctx.convergents().at(n);
    if (!rec) {
        if (ctx.convergents().end_kind() == DigitEnd::Exhausted)
            throw ExhaustedEnclosure("convergent " + std::to_string(n) +
                                     " not certified by the enclosure");
        throw DomainError("convergent index beyond the expansion");
    }
    return *rec;
}

}  // namespace

ExactReal signed_error(NumberContext& ctx, long k) {
    ConvergentRecord rec = record_or_throw(ctx, k);
    return er_sub(er_mul(ExactReal(Rat(rec.q)), ctx.value()), ExactReal(Rat(rec.r)));
}

ApproxError approx_error(NumberContext& ctx, long n, const RefinementBudget& budget) {
    if (n < 1) throw DomainError("approx_error: n must be >= 1");
    require_irrational(ctx);

    ExactReal direct = er_abs(signed_error(ctx, n - 1), budget);

    // Independent route: 1 / (q_{n-1} alpha_n + q_{n-2}).
    Rat q_n1 = Rat(record_or_throw(ctx, n - 1).q);
    Rat q_n2 = n >= 2 ? Rat(record_or_throw(ctx, n - 2).q) : Rat(0);
    ExactReal tail = ctx.tail(n);
    ExactReal denom = er_add(er_mul(ExactReal(q_n1), tail), ExactReal(q_n2));
    ExactReal via_tail = er_inv(denom, budget);

    Cmp c = exact_cmp(direct, via_tail, budget);
    if (c == Cmp::Less || c == Cmp::Greater)
        throw CrossCheckFailure("||q_{n-1} xi|| disagrees with the tail identity at n=" +
                                std::to_string(n) + ": " + er_render_exact(direct) +
                                " vs " + er_render_exact(via_tail));
    if (c == Cmp::Undecided && !is_interval(direct) && !is_interval(via_tail))
        throw CrossCheckFailure("approx_error cross-check undecided on exact values");
    return {n, direct};
}

ConvergentRecord best_denominator(NumberContext& ctx, const Int& t) {
    if (t < 1) throw DomainError("best_denominator: t must be >= 1");
    require_irrational(ctx);
    std::optional<ConvergentRecord> best;
    for (long k = 0;; ++k) {
        auto rec = ctx.convergents().at(k);
        if (!rec) {
            if (ctx.convergents().end_kind() == DigitEnd::Exhausted)
                throw ExhaustedEnclosure(
                    "enclosure exhausted before the denominators passed t");
            break;  // finite expansion of an irrational cannot happen
        }
        if (rec->q > t) break;
        best = *rec;
    }
    if (!best) throw DomainError("no convergent denominator <= t");
    return *best;
}

ExactReal psi_eval(NumberContext& ctx, const Int& t) {
    ConvergentRecord rec = best_denominator(ctx, t);
    return er_abs(signed_error(ctx, rec.n));
}

std::vector<PsiStep> psi_steps(NumberContext& ctx, const Int& t_max) {
    if (t_max < 1) throw DomainError("psi_steps: t_max must be >= 1");
    require_irrational(ctx);
    std::vector<PsiStep> steps;
    for (long k = 0;; ++k) {
        auto rec = ctx.convergents().at(k);
        if (!rec) {
            if (ctx.convergents().end_kind() == DigitEnd::Exhausted)
                throw ExhaustedEnclosure("enclosure exhausted at q_" +
                                         std::to_string(k));
            break;
        }
        if (rec->q > t_max) break;
        // Largest-index rule: a duplicate denominator (q_0 = q_1 when
        // a_1 = 1) belongs to the later index.
        auto next = ctx.convergents().at(k + 1);
        if (next && next->q == rec->q) continue;
        steps.push_back(
            {rec->q, Int(0), rec->n, rec->q, er_abs(signed_error(ctx, rec->n))});
    }
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        steps[i].t_end = steps[i + 1].t_start - 1;
    if (!steps.empty()) steps.back().t_end = t_max;
    return steps;
}

}  // namespace psicf
