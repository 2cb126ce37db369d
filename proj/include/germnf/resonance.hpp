#pragma once

#include <string>
#include <vector>

#include "germnf/gaussq.hpp"

namespace germnf {

/// Position of a diagonal element of the degree-d stage operator in the
/// residual-index case: sigma entries come from first-component basis
/// monomials (index h, 1 <= h <= d), tau entries from second-component ones
/// (index k, 0 <= k <= d).
struct ResonanceWitness {
    enum class Kind { sigma, tau };
    Kind kind = Kind::sigma;
    int d = 2;
    int index = 1;

    friend bool operator==(const ResonanceWitness&, const ResonanceWitness&) = default;
};

/// sigma_{d,h} = (nu+1-h) lambda - (d-h)   for kind sigma,
/// tau_{d,k}   = (k+1-d) - k lambda        for kind tau.
/// Throws std::invalid_argument on an out-of-range index.
GaussQ diagonal_value(const GaussQ& lambda, int contact_order, const ResonanceWitness& w);

/// Membership verdict in the exceptional set
///   E = union_{q=1..nu} (1/q) N  u  {1/d : d >= 2}  u  {0}  u  Q^-.
struct EMembership {
    enum class Component { none, negative_rational, zero, reciprocal_integer, positive_over_q };
    bool member = false;
    Component component = Component::none;
    /// lambda = p/q in lowest terms when rational and matched; for the
    /// negative component p holds the absolute value of the numerator.
    long p = 0, q = 0;
};

std::string to_string(EMembership::Component c);

/// Decide membership from the closed form. Non-real values are never in E.
/// Values 1/q with 2 <= q <= nu match two components; the reciprocal one is
/// reported.
EMembership in_exceptional_set(const GaussQ& lambda, int contact_order);

/// Every vanishing diagonal element with d <= d_max, excluding the universal
/// zero sigma_{nu+1,nu+1}; the enumeration oracle behind the closed form.
/// Sorted by (d, kind, index).
std::vector<ResonanceWitness> witness_scan(const GaussQ& lambda, int contact_order, int d_max);

} // namespace germnf
