// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "psicf/number_spec.hpp"

namespace psicf {

struct OracleConfig {
    long precision_bits = 128;      // starting working precision, >= 64
    unsigned long t_cap = 1000000;  // refuse scans beyond this
};

// Certified enclosure of psi_xi(t) plus the scanned argmin.
struct OracleResult {
    unsigned long argmin = 0;
    Rat lo, hi;
    long bits_used = 0;
};

// min_{1<=x<=t} ||x xi|| by direct scan over fixed-precision enclosures,
// raising precision (at most 8x) until the minimizing x is unambiguous.
// Deliberately independent of the convergent machinery.
OracleResult brute_psi(const NumberSpec& spec, unsigned long t,
                       const OracleConfig& cfg = {});

// Serial reference implementation of the same scan.
OracleResult brute_psi_serial(const NumberSpec& spec, unsigned long t,
                              const OracleConfig& cfg = {});

// Running-minimum scan: results for every t in [1, t_max] in one pass.
std::vector<OracleResult> brute_psi_prefix(const NumberSpec& spec,
                                           unsigned long t_max,
                                           const OracleConfig& cfg = {});

}  // namespace psicf
