// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "psicf/cf.hpp"

namespace psicf {

// ||q_{n-1} xi||, exact. Positive and strictly decreasing in n.
struct ApproxError {
    long n;
    ExactReal value;
};

// One plateau of psi_xi: value ||q_k xi|| on the integer interval
// [t_start, t_end].
struct PsiStep {
    Int t_start;
    Int t_end;
    long k;
    Int q;
    ExactReal value;
};

// Signed error q_k xi - r_k; its sign alternates with k.
ExactReal signed_error(NumberContext& ctx, long k);

// ||q_{n-1} xi|| computed two ways (directly and through the tail identity
// ||q_{n-1} xi|| = 1/(q_{n-1} alpha_n + q_{n-2})); throws CrossCheckFailure
// if the two routes provably disagree.
ApproxError approx_error(NumberContext& ctx, long n,
                         const RefinementBudget& budget = {});

// Record with the largest index k such that q_k <= t (absorbs the q_0 = q_1
// duplicate). Throws RationalInput for rational-valued specs.
ConvergentRecord best_denominator(NumberContext& ctx, const Int& t);

// psi_xi(t) = min_{1<=x<=t} ||x xi|| = ||q_k xi|| for the best k.
ExactReal psi_eval(NumberContext& ctx, const Int& t);

// Complete step decomposition of psi_xi over [1, t_max].
std::vector<PsiStep> psi_steps(NumberContext& ctx, const Int& t_max);

}  // namespace psicf
