// SPDX-License-Identifier: Apache-2.0

#include "psicf/number_spec.hpp"

#include <cctype>
#include <sstream>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }

    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    bool eat_str(const char* lit) {
        std::size_t n = std::char_traits<char>::length(lit);
        if (s.compare(pos, n, lit) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    void expect_str(const char* lit) {
        if (!eat_str(lit)) throw ParseError(std::string("expected \"") + lit + "\"", pos);
    }

    Int parse_int() {
        std::size_t start = pos;
        if (peek() == '-' || peek() == '+') ++pos;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected integer", pos);
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        return Int(s.substr(start, pos - start));
    }

    Int parse_uint() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected unsigned integer", pos);
        std::size_t start = pos;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        return Int(s.substr(start, pos - start));
    }

    // [-]digits[.digits] as an exact rational.
    Rat parse_decimal() {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos;
        }
        Int ip = parse_uint();
        Int num = ip, den = 1;
        if (peek() == '.') {
            ++pos;
            std::size_t start = pos;
            Int fp = parse_uint();
            unsigned long k = pos - start;
            den = pow10(k);
            num = ip * den + fp;
        }
        Rat r = make_rat(num, den);
        return neg ? Rat(-r) : r;
    }

    void end() {
        if (!done()) throw ParseError("trailing characters", pos);
    }
};

void validate_cf(const ExplicitCF& cf) {
    if (cf.pre.empty()) throw DomainError("explicit CF needs a leading a_0");
    for (std::size_t i = 1; i < cf.pre.size(); ++i)
        if (cf.pre[i] < 1) throw DomainError("CF digits after a_0 must be >= 1");
    for (const Int& p : cf.period)
        if (p < 1) throw DomainError("CF period digits must be >= 1");
}

}  // namespace

NumberSpec::NumberSpec(Source source, std::string label)
    : source_(std::move(source)), label_(std::move(label)) {
    if (const auto* cf = std::get_if<ExplicitCF>(&source_)) validate_cf(*cf);
    if (const auto* de = std::get_if<DecimalEnclosure>(&source_)) {
        if (!(de->lo < de->hi)) throw DomainError("decimal enclosure needs lo < hi");
    }
    if (label_.empty()) label_ = render_spec_text(*this);
}

bool NumberSpec::is_rational_value() const {
    if (std::holds_alternative<RationalSource>(source_)) return true;
    if (const auto* cf = std::get_if<ExplicitCF>(&source_)) return cf->period.empty();
    return false;
}

bool NumberSpec::is_exact() const {
    return !std::holds_alternative<DecimalEnclosure>(source_);
}

bool NumberSpec::is_certified_irrational() const {
    if (std::holds_alternative<SurdSource>(source_)) return true;
    if (const auto* cf = std::get_if<ExplicitCF>(&source_)) return !cf->period.empty();
    return false;
}

NumberSpec parse_number_spec(const std::string& text) {
    Parser p{text};
    if (p.eat_str("rat:")) {
        Int num = p.parse_int();
        p.expect('/');
        Int den = p.parse_uint();
        p.end();
        if (den == 0) throw DomainError("rat: denominator must be positive");
        return NumberSpec(RationalSource{make_rat(num, den)}, text);
    }
    if (p.eat_str("quad:")) {
        p.expect('(');
        Int a = p.parse_int();
        int bsign = 1;
        if (p.eat('-')) bsign = -1;
        else p.expect('+');
        Int b = p.parse_int();
        p.expect_str("*sqrt(");
        Int d = p.parse_uint();
        p.expect_str("))/");
        Int c = p.parse_uint();
        p.end();
        if (c == 0) throw DomainError("quad: denominator must be positive");
        ExactReal v = canonicalize_surd(a, bsign * b, d, c);
        if (const auto* r = std::get_if<Rat>(&v))
            return NumberSpec(RationalSource{*r}, text);
        return NumberSpec(SurdSource{std::get<Surd>(v)}, text);
    }
    if (p.eat_str("cf:")) {
        p.expect('[');
        ExplicitCF cf;
        cf.pre.push_back(p.parse_int());
        if (p.eat(';')) {
            bool saw_period = false;
            while (true) {
                if (p.eat('(')) {
                    do cf.period.push_back(p.parse_uint());
                    while (p.eat(','));
                    p.expect(')');
                    saw_period = true;
                } else {
                    cf.pre.push_back(p.parse_uint());
                }
                if (!p.eat(',')) break;
                if (saw_period) throw ParseError("period must come last", p.pos);
            }
            if (saw_period && cf.period.empty())
                throw ParseError("empty period", p.pos);
        }
        p.expect(']');
        p.end();
        return NumberSpec(std::move(cf), text);
    }
    if (p.eat_str("dec:")) {
        Rat lo = p.parse_decimal();
        p.expect_str("..");
        Rat hi = p.parse_decimal();
        p.end();
        return NumberSpec(DecimalEnclosure{lo, hi}, text);
    }
    throw ParseError("unknown spec prefix (want rat:/quad:/cf:/dec:)", p.pos);
}

namespace {

// Exact decimal for rationals whose denominator divides a power of ten.
std::string rat_to_decimal_text(const Rat& r) {
    Int den = r.get_den();
    unsigned long twos = 0, fives = 0;
    Int d = den;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1)
        throw DomainError("enclosure endpoint is not a terminating decimal: " +
                          r.get_num().get_str() + "/" + den.get_str());
    unsigned long k = std::max(twos, fives);
    Int scaled = r.get_num() * (pow10(k) / den);
    bool neg = scaled < 0;
    Int mag = abs(scaled);
    std::string digits = mag.get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - k);
    if (k > 0) out += "." + digits.substr(digits.size() - k);
    return out;
}

}  // namespace

std::string render_spec_text(const NumberSpec& spec) {
    std::ostringstream os;
    if (const auto* r = std::get_if<RationalSource>(&spec.source())) {
        os << "rat:" << r->value.get_num().get_str() << "/"
           << r->value.get_den().get_str();
        return os.str();
    }
    if (const auto* s = std::get_if<SurdSource>(&spec.source())) {
        const Surd& v = s->value;
        os << "quad:(" << v.a().get_str() << (v.b() >= 0 ? "+" : "") << v.b().get_str()
           << "*sqrt(" << v.d().get_str() << "))/" << v.c().get_str();
        return os.str();
    }
    if (const auto* cf = std::get_if<ExplicitCF>(&spec.source())) {
        os << "cf:[" << cf->pre[0].get_str();
        bool more = cf->pre.size() > 1 || !cf->period.empty();
        if (more) os << ";";
        for (std::size_t i = 1; i < cf->pre.size(); ++i)
            os << cf->pre[i].get_str() << (i + 1 < cf->pre.size() ? "," : "");
        if (!cf->period.empty()) {
            if (cf->pre.size() > 1) os << ",";
            os << "(";
            for (std::size_t i = 0; i < cf->period.size(); ++i)
                os << cf->period[i].get_str() << (i + 1 < cf->period.size() ? "," : "");
            os << ")";
        }
        os << "]";
        return os.str();
    }
    const auto& de = std::get<DecimalEnclosure>(spec.source());
    os << "dec:" << rat_to_decimal_text(de.lo) << ".." << rat_to_decimal_text(de.hi);
    return os.str();
}

}  // namespace psicf
