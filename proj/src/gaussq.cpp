#include "germnf/gaussq.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

#include "germnf/errors.hpp"

namespace germnf {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    std::string digits = num;
    if (!digits.empty() && digits[0] == '-') digits = digits.substr(1);
    if (!all_digits(digits) || !all_digits(den))
        throw parse_error("malformed rational \"" + text + "\" (expected \"p/q\")");
    mpz_class d(den);
    if (sgn(d) == 0)
        throw parse_error("zero denominator in rational \"" + text + "\"");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

GaussQ GaussQ::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rational n = norm();
    return GaussQ(re_ / n, -im_ / n);
}

GaussQ GaussQ::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussQ base = *this, acc = GaussQ(1);
    unsigned long k = static_cast<unsigned long>(e);
    while (k != 0) {
        if (k & 1UL) acc *= base;
        base *= base;
        k >>= 1UL;
    }
    return acc;
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) { return *this *= o.inverse(); }

int GaussQ::cmp(const GaussQ& a, const GaussQ& b) {
    int c = ::cmp(a.re_, b.re_);
    if (c != 0) return c;
    return ::cmp(a.im_, b.im_);
}

std::string GaussQ::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re_) != 0) out = rational_str(re_);
    if (sgn(im_) != 0) {
        if (!out.empty()) out += sgn(im_) > 0 ? " + " : " - ";
        else if (sgn(im_) < 0) out += "-";
        out += rational_str(abs(im_)) + "*i";
    }
    return out;
}

namespace {

using ZPair = std::pair<mpz_class, mpz_class>;

ZPair zpair_mul(const ZPair& a, const ZPair& b) {
    return {a.first * b.first - a.second * b.second,
            a.first * b.second + a.second * b.first};
}

ZPair zpair_pow(ZPair base, unsigned n) {
    ZPair acc{1, 0};
    while (n != 0) {
        if (n & 1U) acc = zpair_mul(acc, base);
        base = zpair_mul(base, base);
        n >>= 1U;
    }
    return acc;
}

} // namespace

std::vector<GaussQ> all_nth_roots(const GaussQ& value, unsigned n) {
    if (n == 0) throw std::invalid_argument("0-th root");
    if (value.is_zero()) return {GaussQ(0)};
    if (n == 1) return {value};

    // Clear denominators: x^n = (P + Qi)/m  <=>  (m x)^n = m^(n-1) (P + Qi),
    // and m x must be a Gaussian integer because Z[i] is integrally closed.
    mpz_class m;
    mpz_lcm(m.get_mpz_t(), value.re().get_den().get_mpz_t(),
            value.im().get_den().get_mpz_t());
    mpz_class p = value.re().get_num() * (m / value.re().get_den());
    mpz_class q = value.im().get_num() * (m / value.im().get_den());
    mpz_class mpow;
    mpz_pow_ui(mpow.get_mpz_t(), m.get_mpz_t(), n - 1);
    ZPair g{p * mpow, q * mpow};

    // |y|^2 must be the exact n-th root of |G|^2.
    mpz_class norm = g.first * g.first + g.second * g.second;
    mpz_class radius2;
    if (mpz_root(radius2.get_mpz_t(), norm.get_mpz_t(), n) == 0) return {};

    std::vector<GaussQ> roots;
    mpz_class s = 0;
    for (; s * s <= radius2; ++s) {
        mpz_class t2 = radius2 - s * s;
        if (mpz_perfect_square_p(t2.get_mpz_t()) == 0) continue;
        mpz_class t;
        mpz_sqrt(t.get_mpz_t(), t2.get_mpz_t());
        for (int ss : {1, -1}) {
            for (int ts : {1, -1}) {
                ZPair y{ss * s, ts * t};
                if (zpair_pow(y, n) != g) continue;
                Rational xr(y.first, m), xi(y.second, m);
                xr.canonicalize();
                xi.canonicalize();
                roots.emplace_back(std::move(xr), std::move(xi));
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const GaussQ& a, const GaussQ& b) { return GaussQ::cmp(a, b) < 0; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<GaussQ> nth_root(const GaussQ& value, unsigned n) {
    auto roots = all_nth_roots(value, n);
    if (roots.empty()) return std::nullopt;
    // Canonical pick: last in ascending (re, im) order, so that 1 is the
    // canonical root of 1 and normalized inputs stay fixed.
    return roots.back();
}

} // namespace germnf
