#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace germnf {

using Rational = mpq_class;

/// Parse "p/q" (or a bare integer "p") into an exact rational.
/// The denominator must be a positive integer literal; the sign goes on the
/// numerator. Throws parse_error on anything else, including "p/0".
Rational parse_rational(const std::string& text);

/// Canonical serialization, always with an explicit denominator: "-3/4", "0/1".
std::string rational_str(const Rational& value);

/// Complex number with rational real and imaginary parts: the coefficient
/// field of the whole engine. GMP keeps both parts canonical (positive
/// denominator, lowest terms) after every operation, so equality is exact.
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(long n) : re_(n), im_(0) {} // NOLINT: implicit by design, mirrors field embedding
    GaussQ(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit GaussQ(Rational re) : re_(std::move(re)), im_(0) {}

    static GaussQ i() { return GaussQ(Rational(0), Rational(1)); }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussQ conjugate() const { return GaussQ(re_, -im_); }
    /// re^2 + im^2, the field norm down to the rationals.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    /// Multiplicative inverse; throws std::domain_error on zero.
    GaussQ inverse() const;

    /// Integer power, negative exponents allowed for nonzero values.
    GaussQ pow(long e) const;

    GaussQ operator-() const { return GaussQ(-re_, -im_); }

    GaussQ& operator+=(const GaussQ& o);
    GaussQ& operator-=(const GaussQ& o);
    GaussQ& operator*=(const GaussQ& o);
    GaussQ& operator/=(const GaussQ& o);

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
    friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }

    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    /// Lexicographic comparison on (re, im); the canonical order used to pick
    /// roots deterministically.
    static int cmp(const GaussQ& a, const GaussQ& b);

    /// Debug/text rendering, e.g. "1/2", "-1/3*i", "1/2 + 2/3*i".
    std::string str() const;

private:
    Rational re_, im_;
};

/// All solutions x in Q(i) of x^n = value, sorted by GaussQ::cmp.
/// Exact: the list is complete (there are at most four).
std::vector<GaussQ> all_nth_roots(const GaussQ& value, unsigned n);

/// Canonical n-th root if one exists in the field: the largest solution in
/// the (re, im) lexicographic order, which is 1 whenever 1 is a solution.
std::optional<GaussQ> nth_root(const GaussQ& value, unsigned n);

} // namespace germnf
