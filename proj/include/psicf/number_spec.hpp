// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "psicf/exact_real.hpp"

namespace psicf {

struct RationalSource {
    Rat value;
};

struct SurdSource {
    Surd value;
};

// [pre[0]; pre[1], ..., (period...)] — finite when period is empty.
// pre is nonempty (pre[0] is a_0); all digits after a_0 are >= 1.
struct ExplicitCF {
    std::vector<Int> pre;
    std::vector<Int> period;
};

// Certified two-sided enclosure of an otherwise unknown real; CF digits are
// only emitted while both endpoints agree on them.
struct DecimalEnclosure {
    Rat lo, hi;
};

// A parsed description of a real number that can produce CF digits on demand.
class NumberSpec {
public:
    using Source = std::variant<RationalSource, SurdSource, ExplicitCF, DecimalEnclosure>;

    NumberSpec(Source source, std::string label);

    const Source& source() const { return source_; }
    const std::string& label() const { return label_; }

    bool is_rational_value() const;
    // True when the value is exactly representable (rational or quadratic surd).
    bool is_exact() const;
    // True when irrationality is certified (surd or infinite periodic CF).
    bool is_certified_irrational() const;

private:
    Source source_;
    std::string label_;
};

// Grammar: rat:<int>/<posint> | quad:(<int>+<int>*sqrt(<posint>))/<posint>
//        | cf:[<int>;<d1>,...,(<p1>,...)] | dec:<decimal>..<decimal>
NumberSpec parse_number_spec(const std::string& text);

// Canonical text for a spec; parse(render(s)) describes the same number.
std::string render_spec_text(const NumberSpec& spec);

}  // namespace psicf
