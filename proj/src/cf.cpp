// SPDX-License-Identifier: Apache-2.0

#include "psicf/cf.hpp"

#include <map>
#include <utility>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

// State of the Gauss map on (P + sqrt(D))/Q with Q | D - P^2. D is fixed;
// sqrt_d caches isqrt(D).
struct PqaState {
    Int P, Q;
    Int D;
    Int sqrt_d;

    // Exact floor of (P + sqrt(D))/Q; sqrt(D) is irrational here.
    Int digit() const {
        if (Q > 0) return floor_div(P + sqrt_d, Q);
        return floor_div(-P - sqrt_d - 1, -Q);
    }

    void step(const Int& a) {
        Int p_next = a * Q - P;
        Int q_next = (D - p_next * p_next) / Q;
        P = p_next;
        Q = q_next;
    }
};

// (P + sqrt(D))/Q form of a canonical surd; multiplier m satisfies
// D = m^2 * d, linking PQa states back to the surd's field.
struct PqaSetup {
    PqaState state;
    Int d;  // squarefree field generator
    Int m;  // sqrt(D) = m * sqrt(d)
};

PqaSetup pqa_setup(const Surd& s) {
    Int P, Q, m;
    if (s.b() > 0) {
        P = s.a();
        m = s.b();
        Q = s.c();
    } else {
        P = -s.a();
        m = -s.b();
        Q = -s.c();
    }
    Int D = m * m * s.d();
    if ((D - P * P) % Q != 0) {
        Int aq = abs(Q);
        P *= aq;
        D *= aq * aq;
        m *= aq;
        Q *= aq;
    }
    return {PqaState{P, Q, D, isqrt(D)}, s.d(), m};
}

Surd surd_from_state(const PqaSetup& setup, const PqaState& st) {
    auto v = canonicalize_surd_parts(st.P, setup.m, setup.d, st.Q);
    return std::get<Surd>(v);  // tails of an irrational are irrational
}

// Gauss map on a rational interval: emits a digit only while both endpoints
// agree on it, so every emitted digit is shared by every real in the
// enclosure.
struct EnclosureDigits {
    Interval cur;
    bool exhausted = false;

    std::optional<Int> next() {
        if (exhausted) return std::nullopt;
        Int flo = rat_floor(cur.lo), fhi = rat_floor(cur.hi);
        if (flo != fhi) {
            exhausted = true;
            return std::nullopt;
        }
        Rat fu = cur.lo - Rat(flo), fv = cur.hi - Rat(flo);
        if (fu == 0) {
            exhausted = true;  // endpoint hit an integer: tail unbounded
            return flo;
        }
        cur = Interval{Rat(1) / fv, Rat(1) / fu};
        return flo;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// DigitCursor

struct DigitCursor::Impl {
    // rational source
    bool use_euclid = false;
    Int num, den;  // den == 0 -> done

    // surd source
    bool use_pqa = false;
    PqaState pqa;

    // explicit CF
    bool use_explicit = false;
    const ExplicitCF* cf = nullptr;
    std::size_t idx = 0;

    // enclosure
    bool use_enclosure = false;
    EnclosureDigits enc;

    DigitEnd end = DigitEnd::None;
    long emitted = 0;
};

DigitCursor::DigitCursor(const NumberSpec& spec) : impl_(std::make_unique<Impl>()) {
    if (const auto* r = std::get_if<RationalSource>(&spec.source())) {
        impl_->use_euclid = true;
        impl_->num = r->value.get_num();
        impl_->den = r->value.get_den();
    } else if (const auto* s = std::get_if<SurdSource>(&spec.source())) {
        impl_->use_pqa = true;
        impl_->pqa = pqa_setup(s->value).state;
    } else if (const auto* cf = std::get_if<ExplicitCF>(&spec.source())) {
        impl_->use_explicit = true;
        impl_->cf = cf;
    } else {
        const auto& de = std::get<DecimalEnclosure>(spec.source());
        impl_->use_enclosure = true;
        impl_->enc.cur = Interval{de.lo, de.hi};
    }
}

DigitCursor::~DigitCursor() = default;
DigitCursor::DigitCursor(DigitCursor&&) noexcept = default;
DigitCursor& DigitCursor::operator=(DigitCursor&&) noexcept = default;

std::optional<Int> DigitCursor::next() {
    Impl& im = *impl_;
    if (im.end != DigitEnd::None) return std::nullopt;
    if (im.use_euclid) {
        if (im.den == 0) {
            im.end = DigitEnd::Finite;
            return std::nullopt;
        }
        Int a = floor_div(im.num, im.den);
        Int rem = im.num - a * im.den;
        im.num = im.den;
        im.den = rem;
        ++im.emitted;
        return a;
    }
    if (im.use_pqa) {
        Int a = im.pqa.digit();
        im.pqa.step(a);
        ++im.emitted;
        return a;
    }
    if (im.use_explicit) {
        const auto& cf = *im.cf;
        if (im.idx < cf.pre.size()) {
            ++im.emitted;
            return cf.pre[im.idx++];
        }
        if (cf.period.empty()) {
            im.end = DigitEnd::Finite;
            return std::nullopt;
        }
        std::size_t j = (im.idx - cf.pre.size()) % cf.period.size();
        ++im.idx;
        ++im.emitted;
        return cf.period[j];
    }
    auto d = im.enc.next();
    if (!d) {
        im.end = DigitEnd::Exhausted;
        return std::nullopt;
    }
    ++im.emitted;
    return d;
}

DigitEnd DigitCursor::end_kind() const { return impl_->end; }
long DigitCursor::emitted() const { return impl_->emitted; }

// ---------------------------------------------------------------------------
// Convergents

ConvergentTable::ConvergentTable(const NumberSpec& spec) : cursor_(spec) {}

bool ConvergentTable::grow() {
    if (end_ != DigitEnd::None) return false;
    auto a = cursor_.next();
    if (!a) {
        end_ = cursor_.end_kind();
        return false;
    }
    Int r = *a * r_m1_ + r_m2_;
    Int q = *a * q_m1_ + q_m2_;
    records_.push_back({static_cast<long>(records_.size()), *a, r, q});
    r_m2_ = std::exchange(r_m1_, std::move(r));
    q_m2_ = std::exchange(q_m1_, std::move(q));
    return true;
}

std::optional<ConvergentRecord> ConvergentTable::at(long n) {
    if (n < 0) return std::nullopt;
    while (static_cast<long>(records_.size()) <= n) {
        if (!grow()) return std::nullopt;
    }
    return records_[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// Whole-expansion helpers

std::vector<Int> cf_of_rational(const Int& p, const Int& q) {
    if (q < 1) throw DomainError("cf_of_rational: q must be >= 1");
    NumberSpec spec(RationalSource{make_rat(p, q)}, "");
    DigitCursor cur(spec);
    std::vector<Int> out;
    while (auto a = cur.next()) out.push_back(*a);
    return out;
}

CfExpansion cf_of_surd(const Surd& s) {
    PqaSetup setup = pqa_setup(s);
    PqaState st = setup.state;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> digits;
    while (true) {
        auto key = std::make_pair(st.P, st.Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::size_t start = it->second;
            CfExpansion e;
            e.pre.assign(digits.begin(), digits.begin() + start);
            e.period.assign(digits.begin() + start, digits.end());
            return e;
        }
        seen.emplace(key, digits.size());
        Int a = st.digit();
        digits.push_back(a);
        st.step(a);
    }
}

Rat eval_finite_cf(const std::vector<Int>& digits) {
    if (digits.empty()) throw DomainError("empty CF");
    Rat v(digits.back());
    for (std::size_t i = digits.size() - 1; i-- > 0;) {
        v = Rat(digits[i]) + 1 / v;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Values, tails, reversed tails

namespace {

// Brackets a real from its digit cursor: after k digits the value lies
// between the last two convergents. `seed` optionally intersects with an
// a-priori enclosure (decimal sources).
class CfBracketRefiner : public Refiner {
public:
    CfBracketRefiner(DigitCursor cursor, std::optional<Interval> seed)
        : cursor_(std::move(cursor)) {
        if (seed) cur_ = *seed;
        else {
            // consume a_0 to get a first bracket
            auto a = cursor_.next();
            if (!a) throw ExhaustedEnclosure("no digits available");
            push_digit(*a);
            cur_ = bracket();
        }
    }

    bool refine_step(const RefinementBudget& budget) override {
        if (done_) return false;
        if (cursor_.emitted() >= budget.max_digits) return false;
        auto a = cursor_.next();
        if (!a) {
            done_ = true;
            if (cursor_.end_kind() == DigitEnd::Finite && q_m1_ != 0) {
                // exact rational reached
                Rat v = make_rat(r_m1_, q_m1_);
                cur_ = Interval{v, v};
            }
            return false;
        }
        push_digit(*a);
        Interval b = bracket();
        b.lo = std::max(b.lo, cur_.lo);
        b.hi = std::min(b.hi, cur_.hi);
        cur_ = b;
        return true;
    }

    Interval current() const override { return cur_; }
    long digits_consumed() const override { return cursor_.emitted(); }

private:
    void push_digit(const Int& a) {
        Int r = a * r_m1_ + r_m2_;
        Int q = a * q_m1_ + q_m2_;
        r_m2_ = std::exchange(r_m1_, std::move(r));
        q_m2_ = std::exchange(q_m1_, std::move(q));
        ++count_;
    }

    Interval bracket() const {
        if (count_ == 1) {
            // [a_0, a_0 + 1]
            Rat c0 = make_rat(r_m1_, q_m1_);
            return {c0, c0 + 1};
        }
        Rat ck = make_rat(r_m1_, q_m1_);
        Rat ck1 = make_rat(r_m2_, q_m2_);
        return ck < ck1 ? Interval{ck, ck1} : Interval{ck1, ck};
    }

    DigitCursor cursor_;
    Int r_m1_{1}, q_m1_{0}, r_m2_{0}, q_m2_{1};
    int count_ = 0;
    Interval cur_;
    bool done_ = false;
};

// Cursor positioned at digit index `from` of a spec's expansion.
DigitCursor cursor_at(const NumberSpec& spec, long from) {
    DigitCursor cur(spec);
    for (long i = 0; i < from; ++i) {
        if (!cur.next()) {
            if (cur.end_kind() == DigitEnd::Exhausted)
                throw ExhaustedEnclosure("digit " + std::to_string(from) +
                                         " not certified by the enclosure");
            throw DomainError("digit index beyond a finite expansion");
        }
    }
    return cur;
}

// Exact tail of a periodic explicit CF at position n (n >= pre.size() means
// inside the period). Solves the one-period fixed point and folds back.
ExactReal explicit_periodic_tail(const ExplicitCF& cf, long n) {
    long l0 = static_cast<long>(cf.pre.size());
    long period_len = static_cast<long>(cf.period.size());
    long first = std::max<long>(n, l0);
    long j = (first - l0) % period_len;

    // One full rotated period as a Moebius map x -> (u x + v)/(w x + z).
    Int u = 1, v = 0, w = 0, z = 1;  // identity
    for (long i = 0; i < period_len; ++i) {
        const Int& digit = cf.period[(j + i) % period_len];
        // multiply on the right by [[digit, 1], [1, 0]]
        Int nu = u * digit + v, nv = u;
        Int nw = w * digit + z, nz = w;
        u = std::move(nu);
        v = std::move(nv);
        w = std::move(nw);
        z = std::move(nz);
    }
    // x = (u x + v)/(w x + z), take the root > 1.
    Int disc = (u - z) * (u - z) + 4 * v * w;
    ExactReal tail = canonicalize_surd(u - z, 1, disc, 2 * w);

    // Fold back from position `first` down to n.
    for (long k = first - 1; k >= n; --k) {
        const Int& digit = k < l0 ? cf.pre[static_cast<std::size_t>(k)]
                                  : cf.period[(k - l0) % period_len];
        tail = er_add(ExactReal(Rat(digit)), er_inv(tail));
    }
    return tail;
}

}  // namespace

ExactReal spec_value(const NumberSpec& spec) {
    if (const auto* r = std::get_if<RationalSource>(&spec.source())) return r->value;
    if (const auto* s = std::get_if<SurdSource>(&spec.source())) return s->value;
    if (const auto* cf = std::get_if<ExplicitCF>(&spec.source())) {
        if (cf->period.empty()) return eval_finite_cf(cf->pre);
        return explicit_periodic_tail(*cf, 0);
    }
    const auto& de = std::get<DecimalEnclosure>(spec.source());
    auto refiner = std::make_shared<CfBracketRefiner>(DigitCursor(spec),
                                                      Interval{de.lo, de.hi});
    return IntervalReal(std::move(refiner));
}

ExactReal tail_value(const NumberSpec& spec, long n) {
    if (n < 1) throw DomainError("tail_value: n must be >= 1");
    if (const auto* s = std::get_if<SurdSource>(&spec.source())) {
        PqaSetup setup = pqa_setup(s->value);
        PqaState st = setup.state;
        for (long i = 0; i < n; ++i) st.step(st.digit());
        return surd_from_state(setup, st);
    }
    if (const auto* cf = std::get_if<ExplicitCF>(&spec.source())) {
        if (!cf->period.empty()) return explicit_periodic_tail(*cf, n);
        if (n >= static_cast<long>(cf->pre.size()))
            throw DomainError("tail_value: index beyond the finite expansion");
        std::vector<Int> rest(cf->pre.begin() + n, cf->pre.end());
        return eval_finite_cf(rest);
    }
    if (const auto* r = std::get_if<RationalSource>(&spec.source())) {
        std::vector<Int> digits = cf_of_rational(r->value.get_num(), r->value.get_den());
        if (n >= static_cast<long>(digits.size()))
            throw DomainError("tail_value: index beyond the finite expansion");
        std::vector<Int> rest(digits.begin() + n, digits.end());
        return eval_finite_cf(rest);
    }
    // Decimal enclosure: bracket the tail by its own convergents.
    auto refiner =
        std::make_shared<CfBracketRefiner>(cursor_at(spec, n), std::nullopt);
    return IntervalReal(std::move(refiner));
}

Rat reversed_tail(const NumberSpec& spec, long n) {
    if (n < 1) throw DomainError("reversed_tail: n must be >= 1");
    ConvergentTable table(spec);
    auto qn = table.at(n);
    if (!qn) {
        if (table.end_kind() == DigitEnd::Exhausted)
            throw ExhaustedEnclosure("convergent q_" + std::to_string(n) +
                                     " not certified");
        throw DomainError("reversed_tail: index beyond the finite expansion");
    }
    auto qn1 = table.at(n - 1);
    return make_rat(qn1->q, qn->q);
}

Rat reversed_tail_by_digits(const NumberSpec& spec, long n) {
    DigitCursor cur(spec);
    std::vector<Int> digits;
    for (long i = 0; i <= n; ++i) {
        auto a = cur.next();
        if (!a) throw DomainError("reversed_tail_by_digits: not enough digits");
        digits.push_back(*a);
    }
    // [0; a_n, a_{n-1}, ..., a_1]
    std::vector<Int> rev;
    rev.push_back(0);
    for (long i = n; i >= 1; --i) rev.push_back(digits[static_cast<std::size_t>(i)]);
    return eval_finite_cf(rev);
}

// ---------------------------------------------------------------------------
// NumberContext

NumberContext::NumberContext(NumberSpec spec)
    : spec_(std::move(spec)), table_(spec_) {}

const ExactReal& NumberContext::value() {
    if (!value_) value_ = spec_value(spec_);
    return *value_;
}

ExactReal NumberContext::tail(long n) {
    if (n >= 1 && static_cast<std::size_t>(n) < tail_cache_.size() &&
        tail_cache_[static_cast<std::size_t>(n)])
        return *tail_cache_[static_cast<std::size_t>(n)];
    ExactReal t = tail_value(spec_, n);
    if (n >= 1 && spec_.is_exact()) {
        if (static_cast<std::size_t>(n) >= tail_cache_.size())
            tail_cache_.resize(static_cast<std::size_t>(n) + 1);
        tail_cache_[static_cast<std::size_t>(n)] = t;
    }
    return t;
}

}  // namespace psicf
