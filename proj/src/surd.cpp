// SPDX-License-Identifier: Apache-2.0

#include "psicf/surd.hpp"

#include <sstream>

#include "psicf/errors.hpp"

namespace psicf {

int sign_surd_parts(const Int& a, const Int& b, const Int& d, const Int& c) {
    if (c == 0) throw DivisionByZero();
    if (d < 0) throw DomainError("sign_surd_parts: d < 0");
    int flip = c < 0 ? -1 : 1;
    // sign of a + b*sqrt(d)
    int sa = sgn(a);
    Int bd = b * b * d;
    int sb = (b == 0 || d == 0) ? 0 : sgn(b);
    if (sb == 0) return flip * sa;
    if (sa == 0) return flip * sb;
    if (sa == sb) return flip * sa;
    // Opposite signs: compare a^2 against b^2 d; the larger magnitude wins.
    Int aa = a * a;
    if (aa == bd) return 0;
    return flip * (aa > bd ? sa : sb);
}

Int floor_surd_parts(const Int& a, const Int& b, const Int& d, const Int& c) {
    // b*sqrt(d) lies strictly between consecutive integers because d is not a
    // perfect square, so floor(a + b*sqrt(d)) is exact from isqrt alone.
    Int s = isqrt(b * b * d);
    Int fl_num = b > 0 ? a + s : a - s - 1;
    return floor_div(fl_num, c);
}

int Surd::sign() const { return sign_surd_parts(a_, b_, d_, c_); }

Int Surd::floor() const { return floor_surd_parts(a_, b_, d_, c_); }

std::pair<Rat, Rat> Surd::enclosure(unsigned long bits) const {
    Int scale = pow2(bits);
    Int t = isqrt(d_ * scale * scale);
    // t/scale <= sqrt(d) < (t+1)/scale
    Rat sq_lo = make_rat(t, scale), sq_hi = make_rat(t + 1, scale);
    Rat lo = (Rat(a_) + Rat(b_) * (b_ > 0 ? sq_lo : sq_hi)) / Rat(c_);
    Rat hi = (Rat(a_) + Rat(b_) * (b_ > 0 ? sq_hi : sq_lo)) / Rat(c_);
    return {lo, hi};
}

std::string Surd::to_string() const {
    std::ostringstream os;
    os << "(" << a_.get_str() << (b_ >= 0 ? "+" : "") << b_.get_str() << "*sqrt("
       << d_.get_str() << "))/" << c_.get_str();
    return os.str();
}

SurdValue canonicalize_surd_parts(Int a, Int b, Int d, Int c) {
    if (c == 0) throw DivisionByZero();
    if (d < 0) throw DomainError("quadratic surd requires d >= 0");

    if (b != 0 && d > 1) {
        auto [sqfree, outer] = squarefree_decompose(d);
        d = sqfree;
        b *= outer;
    }
    if (b == 0 || d <= 1) {
        // Rational: d is 0/1 or a perfect square folded into b.
        Int num = a + b * d;  // d <= 1 here, so b*sqrt(d) = b*d
        if (b != 0 && d == 1) num = a + b;
        else if (b != 0 && d == 0) num = a;
        else num = a;
        return make_rat(num, c);
    }
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    return Surd(std::move(a), std::move(b), std::move(d), std::move(c));
}

namespace {

SurdValue canon(Int a, Int b, const Int& d, Int c) {
    return canonicalize_surd_parts(std::move(a), std::move(b), Int(d), std::move(c));
}

}  // namespace

SurdValue surd_add(const Surd& x, const Surd& y) {
    return canon(x.a() * y.c() + y.a() * x.c(), x.b() * y.c() + y.b() * x.c(), x.d(),
                 x.c() * y.c());
}

SurdValue surd_sub(const Surd& x, const Surd& y) {
    return canon(x.a() * y.c() - y.a() * x.c(), x.b() * y.c() - y.b() * x.c(), x.d(),
                 x.c() * y.c());
}

SurdValue surd_mul(const Surd& x, const Surd& y) {
    return canon(x.a() * y.a() + x.b() * y.b() * x.d(), x.a() * y.b() + x.b() * y.a(),
                 x.d(), x.c() * y.c());
}

Surd surd_inv(const Surd& x) {
    // 1/((a+b*sqrt(d))/c) = c*(a - b*sqrt(d)) / (a^2 - b^2 d); never rational.
    Int norm = x.a() * x.a() - x.b() * x.b() * x.d();
    auto v = canon(x.c() * x.a(), -x.c() * x.b(), x.d(), norm);
    return std::get<Surd>(v);
}

SurdValue surd_div(const Surd& x, const Surd& y) { return surd_mul(x, surd_inv(y)); }

SurdValue surd_add_rat(const Surd& x, const Rat& r) {
    return canon(x.a() * r.get_den() + r.get_num() * x.c(), x.b() * r.get_den(), x.d(),
                 x.c() * r.get_den());
}

SurdValue surd_mul_rat(const Surd& x, const Rat& r) {
    return canon(x.a() * r.get_num(), x.b() * r.get_num(), x.d(), x.c() * r.get_den());
}

int surd_cmp(const Surd& x, const Surd& y) {
    if (x.d() != y.d()) throw DomainError("surd_cmp: operands from different fields");
    return sign_surd_parts(x.a() * y.c() - y.a() * x.c(), x.b() * y.c() - y.b() * x.c(),
                           x.d(), x.c() * y.c());
}

int surd_cmp_rat(const Surd& x, const Rat& r) {
    return sign_surd_parts(x.a() * r.get_den() - r.get_num() * x.c(),
                           x.b() * r.get_den(), x.d(), x.c() * r.get_den());
}

}  // namespace psicf
