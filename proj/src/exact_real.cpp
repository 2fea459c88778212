// SPDX-License-Identifier: Apache-2.0

#include "psicf/exact_real.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

enum class Op { Add, Sub, Mul, Div, Neg, Abs, Inv };

Interval op_on_intervals(Op op, const Interval& x, const Interval& y) {
    switch (op) {
        case Op::Add: return {x.lo + y.lo, x.hi + y.hi};
        case Op::Sub: return {x.lo - y.hi, x.hi - y.lo};
        case Op::Mul: {
            std::array<Rat, 4> p = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
            return {*std::min_element(p.begin(), p.end()),
                    *std::max_element(p.begin(), p.end())};
        }
        case Op::Div: {
            // y must not straddle zero; the caller proved that already.
            Interval inv{Rat(1) / y.hi, Rat(1) / y.lo};
            return op_on_intervals(Op::Mul, x, inv);
        }
        case Op::Neg: return {-x.hi, -x.lo};
        case Op::Abs: {
            if (x.lo >= 0) return x;
            if (x.hi <= 0) return {-x.hi, -x.lo};
            Rat m = std::max(Rat(-x.lo), x.hi);
            return {Rat(0), m};
        }
        case Op::Inv: return op_on_intervals(Op::Div, {Rat(1), Rat(1)}, x);
    }
    throw Error("unreachable");
}

bool intervals_need(Op op) { return op != Op::Neg && op != Op::Abs && op != Op::Inv; }

// Lazily recomputed interval for op(x, y); each step doubles the working
// precision of the operand enclosures and intersects with the previous result
// so refinement stays monotone.
class OpRefiner : public Refiner {
public:
    OpRefiner(Op op, ExactReal x, ExactReal y, const RefinementBudget& budget)
        : op_(op), x_(std::move(x)), y_(std::move(y)) {
        cur_ = compute(budget);
    }

    bool refine_step(const RefinementBudget& budget) override {
        if (exhausted_ || 2 * bits_ > static_cast<unsigned long>(budget.max_bits))
            return false;
        bits_ *= 2;
        Interval next = compute(budget);
        // Monotone shrink even if an operand source stalls.
        next.lo = std::max(next.lo, cur_.lo);
        next.hi = std::min(next.hi, cur_.hi);
        bool shrank = next.width() < cur_.width();
        cur_ = next;
        if (!shrank) {
            stalls_++;
            if (stalls_ >= 2 && operands_stuck(budget)) exhausted_ = true;
        } else {
            stalls_ = 0;
        }
        return shrank || !exhausted_;
    }

    Interval current() const override { return cur_; }

    long digits_consumed() const override {
        long n = 0;
        if (const auto* ix = std::get_if<IntervalReal>(&x_)) n += ix->digits_consumed();
        if (intervals_need(op_))
            if (const auto* iy = std::get_if<IntervalReal>(&y_))
                n += iy->digits_consumed();
        return n;
    }

private:
    Interval compute(const RefinementBudget& budget) {
        Interval ex = enclosure_at(x_, bits_, budget);
        if (!intervals_need(op_)) return op_on_intervals(op_, ex, ex);
        Interval ey = enclosure_at(y_, bits_, budget);
        return op_on_intervals(op_, ex, ey);
    }

    bool operand_stuck(const ExactReal& v, const RefinementBudget& budget) {
        if (auto* iv = std::get_if<IntervalReal>(&v))
            return !const_cast<IntervalReal*>(iv)->refine(budget);
        return false;  // rational/surd enclosures tighten forever
    }

    bool operands_stuck(const RefinementBudget& budget) {
        bool x_stuck = is_interval(x_) && operand_stuck(x_, budget);
        bool y_stuck = !intervals_need(op_) ||
                       (is_interval(y_) ? operand_stuck(y_, budget) : false);
        if (!is_interval(x_)) x_stuck = false;
        return (is_interval(x_) ? x_stuck : true) &&
               (!intervals_need(op_) || !is_interval(y_) ? true : y_stuck) &&
               (is_interval(x_) || (intervals_need(op_) && is_interval(y_)));
    }

    Op op_;
    ExactReal x_, y_;
    unsigned long bits_ = 64;
    Interval cur_;
    int stalls_ = 0;
    bool exhausted_ = false;
};

ExactReal make_op_interval(Op op, const ExactReal& x, const ExactReal& y,
                           const RefinementBudget& budget = {}) {
    auto ref = std::make_shared<OpRefiner>(op, x, y, budget);
    Interval c = ref->current();
    if (c.is_point()) return c.lo;  // collapsed to an exact rational
    return IntervalReal(std::move(ref));
}

const Rat* as_rat(const ExactReal& x) { return std::get_if<Rat>(&x); }
const Surd* as_surd(const ExactReal& x) { return std::get_if<Surd>(&x); }

ExactReal lift(SurdValue v) {
    if (auto* r = std::get_if<Rat>(&v)) return std::move(*r);
    return std::move(std::get<Surd>(v));
}

ExactReal arith(Op op, const ExactReal& x, const ExactReal& y,
                const RefinementBudget& budget) {
    const Rat *rx = as_rat(x), *ry = as_rat(y);
    const Surd *sx = as_surd(x), *sy = as_surd(y);

    if (rx && ry) {
        switch (op) {
            case Op::Add: return Rat(*rx + *ry);
            case Op::Sub: return Rat(*rx - *ry);
            case Op::Mul: return Rat(*rx * *ry);
            case Op::Div:
                if (*ry == 0) throw DivisionByZero();
                return Rat(*rx / *ry);
            default: break;
        }
    }
    // Same-field (or rational/surd) pairs stay exact.
    if (sx && sy && sx->d() == sy->d()) {
        switch (op) {
            case Op::Add: return lift(surd_add(*sx, *sy));
            case Op::Sub: return lift(surd_sub(*sx, *sy));
            case Op::Mul: return lift(surd_mul(*sx, *sy));
            case Op::Div: return lift(surd_div(*sx, *sy));
            default: break;
        }
    }
    if (sx && ry) {
        switch (op) {
            case Op::Add: return lift(surd_add_rat(*sx, *ry));
            case Op::Sub: return lift(surd_add_rat(*sx, Rat(-*ry)));
            case Op::Mul: return lift(surd_mul_rat(*sx, *ry));
            case Op::Div:
                if (*ry == 0) throw DivisionByZero();
                return lift(surd_mul_rat(*sx, Rat(1 / *ry)));
            default: break;
        }
    }
    if (rx && sy) {
        switch (op) {
            case Op::Add: return lift(surd_add_rat(*sy, *rx));
            case Op::Sub: return er_neg(lift(surd_add_rat(*sy, Rat(-*rx))));
            case Op::Mul: return lift(surd_mul_rat(*sy, *rx));
            case Op::Div: return lift(surd_mul_rat(surd_inv(*sy), *rx));
            default: break;
        }
    }
    // Mixed fields or interval operands: certified enclosure arithmetic.
    if (op == Op::Div) {
        int sy_sign = er_sign(y, budget);  // throws when undecidable
        if (sy_sign == 0) throw DivisionByZero();
    }
    return make_op_interval(op, x, y, budget);
}

}  // namespace

ExactReal canonicalize_surd(const Int& a, const Int& b, const Int& d, const Int& c) {
    return lift(canonicalize_surd_parts(a, b, d, c));
}

ExactReal er_add(const ExactReal& x, const ExactReal& y) {
    return arith(Op::Add, x, y, {});
}
ExactReal er_sub(const ExactReal& x, const ExactReal& y) {
    return arith(Op::Sub, x, y, {});
}
ExactReal er_mul(const ExactReal& x, const ExactReal& y) {
    return arith(Op::Mul, x, y, {});
}
ExactReal er_div(const ExactReal& x, const ExactReal& y,
                 const RefinementBudget& budget) {
    return arith(Op::Div, x, y, budget);
}

ExactReal er_neg(const ExactReal& x) {
    if (const auto* r = as_rat(x)) return Rat(-*r);
    if (const auto* s = as_surd(x)) return s->negated();
    return make_op_interval(Op::Neg, x, x);
}

ExactReal er_abs(const ExactReal& x, const RefinementBudget& budget) {
    if (const auto* r = as_rat(x)) return Rat(abs(*r));
    if (const auto* s = as_surd(x)) return s->abs_value();
    return make_op_interval(Op::Abs, x, x, budget);
}

ExactReal er_inv(const ExactReal& x, const RefinementBudget& budget) {
    if (const auto* r = as_rat(x)) {
        if (*r == 0) throw DivisionByZero();
        return Rat(1 / *r);
    }
    if (const auto* s = as_surd(x)) return surd_inv(*s);
    if (er_sign(x, budget) == 0) throw DivisionByZero();
    return make_op_interval(Op::Inv, x, x, budget);
}

ExactReal er_from_int(long v) { return Rat(v); }
ExactReal er_from_rat(const Rat& r) { return r; }

Interval enclosure_at(const ExactReal& x, unsigned long bits,
                      const RefinementBudget& budget) {
    if (const auto* r = as_rat(x)) return {*r, *r};
    if (const auto* s = as_surd(x)) {
        auto [lo, hi] = s->enclosure(bits);
        return {lo, hi};
    }
    auto iv = std::get<IntervalReal>(x);  // shares the refiner
    Rat target = make_rat(1, pow2(bits));
    iv.refine_to_width(target, budget);
    return iv.current();
}

Cmp exact_cmp(const ExactReal& x, const ExactReal& y, const RefinementBudget& budget) {
    const Rat *rx = as_rat(x), *ry = as_rat(y);
    const Surd *sx = as_surd(x), *sy = as_surd(y);

    if (rx && ry) {
        int c = cmp(*rx, *ry);
        return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
    }
    if (sx && ry) {
        int c = surd_cmp_rat(*sx, *ry);
        return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
    }
    if (rx && sy) {
        int c = -surd_cmp_rat(*sy, *rx);
        return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
    }
    if (sx && sy && sx->d() == sy->d()) {
        int c = surd_cmp(*sx, *sy);
        return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
    }

    // At least one enclosure (or two surds from different fields, which can
    // never be equal): refine alternately until the enclosures separate.
    IntervalReal* ix = std::get_if<IntervalReal>(const_cast<ExactReal*>(&x));
    IntervalReal* iy = std::get_if<IntervalReal>(const_cast<ExactReal*>(&y));
    unsigned long bits = 64;
    bool x_alive = true, y_alive = true;
    while (true) {
        Interval ex = ix ? ix->current() : enclosure_at(x, bits, budget);
        Interval ey = iy ? iy->current() : enclosure_at(y, bits, budget);
        if (ex.hi < ey.lo) return Cmp::Less;
        if (ey.hi < ex.lo) return Cmp::Greater;
        if (ex.is_point() && ey.is_point()) return Cmp::Equal;
        bool digits_left =
            (ix ? ix->digits_consumed() : 0) + (iy ? iy->digits_consumed() : 0) <
            budget.max_digits;
        if (bits > static_cast<unsigned long>(budget.max_bits) || !digits_left)
            return Cmp::Undecided;
        bool progressed = false;
        if (ix && x_alive) {
            x_alive = ix->refine(budget);
            progressed |= x_alive;
        }
        if (iy && y_alive) {
            y_alive = iy->refine(budget);
            progressed |= y_alive;
        }
        if (!ix && !iy) {
            bits *= 2;  // two foreign surds: tighten both isqrt enclosures
            progressed = true;
        } else if (!ix || !iy) {
            bits *= 2;  // exact side vs enclosure side
            progressed = true;
        }
        if (!progressed && !x_alive && !y_alive) return Cmp::Undecided;
    }
}

int er_sign(const ExactReal& x, const RefinementBudget& budget) {
    if (const auto* r = as_rat(x)) return sgn(*r);
    if (const auto* s = as_surd(x)) return s->sign();
    Cmp c = exact_cmp(x, ExactReal(Rat(0)), budget);
    switch (c) {
        case Cmp::Less: return -1;
        case Cmp::Greater: return 1;
        case Cmp::Equal: return 0;
        case Cmp::Undecided: throw UndecidedComparison("sign undecided within budget");
    }
    throw Error("unreachable");
}

namespace {

// Common decimal renderer: produces floor(|x| * 10^digits) or
// round(|x| * 10^digits) together with the sign.
struct ScaledInt {
    int sign;
    Int scaled;
};

ScaledInt scale_to_int(const ExactReal& x, unsigned long digits, bool round_nearest,
                       const RefinementBudget& budget) {
    Int p = pow10(digits);
    if (const auto* r = as_rat(x)) {
        Rat v = abs(*r);
        int s = sgn(*r);
        Rat scaled = v * Rat(p);
        Int n = round_nearest ? floor_div(2 * scaled.get_num() + scaled.get_den(),
                                          2 * scaled.get_den())
                              : rat_floor(scaled);
        return {s, n};
    }
    if (const auto* sd = as_surd(x)) {
        int s = sd->sign();
        Surd v = sd->abs_value();
        if (round_nearest) {
            // floor(v*10^D + 1/2) = floor((2aP + c + 2bP sqrt(d)) / 2c)
            Int n = floor_surd_parts(2 * v.a() * p + v.c(), 2 * v.b() * p, v.d(),
                                     2 * v.c());
            return {s, n};
        }
        return {s, floor_surd_parts(v.a() * p, v.b() * p, v.d(), v.c())};
    }
    auto iv = std::get<IntervalReal>(x);
    Rat target = make_rat(1, 2 * p);
    while (true) {
        Interval c = iv.current();
        if (!round_nearest) {
            // Need both endpoints to agree on floor(|x| * 10^D) and on sign.
            if (c.lo >= 0 || c.hi <= 0) {
                int s = c.hi <= 0 ? (c.is_point() && c.lo == 0 ? 0 : -1) : 1;
                Rat alo = abs(s < 0 ? c.hi : c.lo), ahi = abs(s < 0 ? c.lo : c.hi);
                Int nlo = rat_floor(alo * Rat(p)), nhi = rat_floor(ahi * Rat(p));
                if (nlo == nhi) return {s, nlo};
            }
        } else if (c.width() <= target) {
            Rat m = c.mid();
            int s = sgn(m);
            Rat scaled = abs(m) * Rat(p);
            Int n = floor_div(2 * scaled.get_num() + scaled.get_den(),
                              2 * scaled.get_den());
            return {s, n};
        }
        if (!iv.refine(budget))
            throw UndecidedComparison("decimal rendering: enclosure exhausted");
    }
}

std::string render_decimal(const ScaledInt& si, unsigned long digits) {
    std::string ds = si.scaled.get_str();
    if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    std::string out;
    if (si.sign < 0 && si.scaled != 0) out += '-';
    out += ds.substr(0, ds.size() - digits);
    if (digits > 0) {
        out += '.';
        out += ds.substr(ds.size() - digits);
    }
    return out;
}

}  // namespace

std::string to_decimal(const ExactReal& x, unsigned long digits,
                       const RefinementBudget& budget) {
    if (digits < 1) throw DomainError("to_decimal: digits must be >= 1");
    return render_decimal(scale_to_int(x, digits, /*round_nearest=*/true, budget),
                          digits);
}

std::string decimal_truncate(const ExactReal& x, unsigned long digits,
                             const RefinementBudget& budget) {
    return render_decimal(scale_to_int(x, digits, /*round_nearest=*/false, budget),
                          digits);
}

std::string er_render_exact(const ExactReal& x) {
    if (const auto* r = as_rat(x)) {
        std::ostringstream os;
        os << r->get_num().get_str() << "/" << r->get_den().get_str();
        return os.str();
    }
    if (const auto* s = as_surd(x)) return s->to_string();
    Interval c = std::get<IntervalReal>(x).current();
    std::ostringstream os;
    os << "[" << c.lo.get_num().get_str() << "/" << c.lo.get_den().get_str() << ", "
       << c.hi.get_num().get_str() << "/" << c.hi.get_den().get_str() << "]";
    return os.str();
}

}  // namespace psicf
