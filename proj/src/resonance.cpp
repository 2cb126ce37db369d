#include "germnf/resonance.hpp"

#include <stdexcept>

namespace germnf {

GaussQ diagonal_value(const GaussQ& lambda, int contact_order, const ResonanceWitness& w) {
    if (w.d < 2) throw std::invalid_argument("stage degree must be at least 2");
    if (w.kind == ResonanceWitness::Kind::sigma) {
        if (w.index < 1 || w.index > w.d)
            throw std::invalid_argument("sigma index out of range");
        return GaussQ(contact_order + 1 - w.index) * lambda - GaussQ(w.d - w.index);
    }
    if (w.index < 0 || w.index > w.d)
        throw std::invalid_argument("tau index out of range");
    return GaussQ(w.index + 1 - w.d) - GaussQ(w.index) * lambda;
}

std::string to_string(EMembership::Component c) {
    switch (c) {
        case EMembership::Component::none: return "none";
        case EMembership::Component::negative_rational: return "negative_rational";
        case EMembership::Component::zero: return "zero";
        case EMembership::Component::reciprocal_integer: return "reciprocal_integer";
        case EMembership::Component::positive_over_q: return "positive_over_q";
    }
    return "?";
}

EMembership in_exceptional_set(const GaussQ& lambda, int contact_order) {
    EMembership out;
    if (!lambda.is_real()) return out; // E is a set of rationals

    const Rational& r = lambda.re();
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::invalid_argument("residual index too large to dispatch");
    long p = r.get_num().get_si();
    long q = r.get_den().get_si(); // canonical: q > 0, gcd(p, q) = 1

    if (p < 0) {
        out = {true, EMembership::Component::negative_rational, -p, q};
    } else if (p == 0) {
        out = {true, EMembership::Component::zero, 0, 1};
    } else if (p == 1 && q >= 2) {
        out = {true, EMembership::Component::reciprocal_integer, p, q};
    } else if (q <= contact_order) {
        out = {true, EMembership::Component::positive_over_q, p, q};
    }
    return out;
}

std::vector<ResonanceWitness> witness_scan(const GaussQ& lambda, int contact_order,
                                           int d_max) {
    if (d_max < 2) throw std::invalid_argument("scan bound must be at least 2");
    std::vector<ResonanceWitness> hits;
    int nu = contact_order;

    // Rational lambda = p/q turns both zero tests into small integer
    // identities; non-real lambda is handled by the generic evaluation.
    bool rational = lambda.is_real() && lambda.re().get_num().fits_slong_p() &&
                    lambda.re().get_den().fits_slong_p();
    long p = rational ? lambda.re().get_num().get_si() : 0;
    long q = rational ? lambda.re().get_den().get_si() : 1;

    for (int d = 2; d <= d_max; ++d) {
        for (int h = 1; h <= d; ++h) {
            if (d == nu + 1 && h == nu + 1) continue; // the universal zero
            ResonanceWitness w{ResonanceWitness::Kind::sigma, d, h};
            bool zero = rational ? (nu + 1 - h) * p == static_cast<long>(d - h) * q
                                 : diagonal_value(lambda, nu, w).is_zero();
            if (zero) hits.push_back(w);
        }
        for (int k = 0; k <= d; ++k) {
            ResonanceWitness w{ResonanceWitness::Kind::tau, d, k};
            bool zero = rational ? static_cast<long>(k + 1 - d) * q == k * p
                                 : diagonal_value(lambda, nu, w).is_zero();
            if (zero) hits.push_back(w);
        }
    }
    return hits;
}

} // namespace germnf
