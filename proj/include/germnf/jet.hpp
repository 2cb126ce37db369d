#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "germnf/gaussq.hpp"

namespace germnf {

/// Exponent pair of a bivariate monomial z1^e1 z2^e2, ordered lexicographically
/// on (e1, e2). This is the canonical term order everywhere, including in
/// serialized output.
struct Mono {
    int e1 = 0;
    int e2 = 0;

    int degree() const noexcept { return e1 + e2; }
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

/// A pair of homogeneous polynomials of one total degree d, stored densely on
/// the monomial basis
///   index h in 0..d        <->  (z1^h z2^(d-h), 0)
///   index d+1+k, k in 0..d <->  (0, z1^k z2^(d-k)).
/// An element lies in the constrained space V_d exactly when the coefficient
/// at index 0 vanishes (first component divisible by z1).
class HomPair {
public:
    explicit HomPair(int degree);

    int degree() const noexcept { return degree_; }
    int size() const noexcept { return 2 * degree_ + 2; }

    const GaussQ& operator[](int index) const { return coeff_.at(static_cast<size_t>(index)); }
    GaussQ& operator[](int index) { return coeff_.at(static_cast<size_t>(index)); }

    static int first_index([[maybe_unused]] int d, int h) { return h; } // (z1^h z2^(d-h), 0)
    static int second_index(int d, int k) { return d + 1 + k; }   // (0, z1^k z2^(d-k))

    bool is_zero() const;
    bool in_constrained_space() const { return coeff_[0].is_zero(); }

    HomPair& operator+=(const HomPair& o);
    HomPair& operator-=(const HomPair& o);
    HomPair operator-() const;
    HomPair scaled(const GaussQ& c) const;

    friend HomPair operator+(HomPair a, const HomPair& b) { return a += b; }
    friend HomPair operator-(HomPair a, const HomPair& b) { return a -= b; }
    friend bool operator==(const HomPair& a, const HomPair& b) {
        return a.degree_ == b.degree_ && a.coeff_ == b.coeff_;
    }

private:
    int degree_;
    std::vector<GaussQ> coeff_;
};

/// A pair of truncated bivariate power series: everything the engine computes
/// is exact modulo total degree `truncation()`. Coefficients are stored
/// sparsely (never zero) in canonical monomial order.
class JetMap {
public:
    using Terms = std::map<Mono, GaussQ>;

    explicit JetMap(int truncation);

    static JetMap identity(int truncation);

    int truncation() const noexcept { return trunc_; }

    const Terms& component(int i) const { return comp_.at(static_cast<size_t>(i)); }

    GaussQ coeff(int component, int e1, int e2) const;
    /// Adds into a coefficient; silently drops terms beyond the truncation
    /// degree (jet semantics) and erases entries that cancel to zero.
    void add_coeff(int component, int e1, int e2, const GaussQ& value);
    void set_coeff(int component, int e1, int e2, const GaussQ& value);

    bool is_zero() const;
    /// Lowest total degree with a nonzero term, or truncation()+1 if none.
    int lowest_degree() const;
    /// Largest power of z1 dividing every stored term; truncation()+1 when the
    /// jet is zero.
    int z1_valuation() const;
    bool first_component_z1_divisible() const;

    /// Same coefficients re-truncated. Raising the truncation treats the jet
    /// as an exact polynomial (the missing terms are zero).
    JetMap with_truncation(int truncation) const;

    HomPair part(int degree) const;
    void add_part(const HomPair& p);

    /// Both components multiplied by z1^k; the truncation degree grows by k.
    JetMap shifted_up(int k) const;
    /// Both components divided by z1^k; every term must have e1 >= k.
    JetMap shifted_down(int k) const;

    JetMap& operator+=(const JetMap& o);
    JetMap& operator-=(const JetMap& o);
    JetMap operator-() const;
    JetMap scaled(const GaussQ& c) const;

    friend JetMap operator+(JetMap a, const JetMap& b) { return a += b; }
    friend JetMap operator-(JetMap a, const JetMap& b) { return a -= b; }
    friend bool operator==(const JetMap& a, const JetMap& b) {
        return a.trunc_ == b.trunc_ && a.comp_ == b.comp_;
    }

private:
    int trunc_;
    std::array<Terms, 2> comp_;
};

/// Jet of f(g(z)) through total degree trunc. g must fix the origin.
JetMap jet_compose(const JetMap& f, const JetMap& g, int trunc);

/// Inverse of a change of coordinates tangent to the identity: both
/// compositions with the result equal the identity exactly through trunc.
JetMap jet_invert(const JetMap& chi, int trunc);

/// Jacobian matrix of map applied to the vector field: component i of the
/// result is sum_j dmap_i/dz_j * vec_j, truncated at the smaller of the two
/// truncation degrees.
JetMap jacobian_apply(const JetMap& map, const JetMap& vec);

/// f = id + z1^contact_order * reduced, with reduced not divisible by z1 and
/// pure_order the lowest degree of a nonzero homogeneous part of reduced.
struct GermDecomposition {
    int contact_order = 1;     // nu
    JetMap reduced;            // truncated at degree - contact_order
    int pure_order = 1;        // mu
    int degree = 2;            // truncation of the original map

    GermDecomposition() : reduced(0) {}
};

/// Split a map tangent to the identity as id + z1^nu * reduced.
/// Throws hypothesis_error when the input is the identity, moves the origin,
/// has a non-identity linear part, does not fix {z1=0} pointwise, or has a
/// reduced map that does not vanish at the origin.
GermDecomposition decompose_germ(const JetMap& f);

/// id + z1^nu * reduced, the exact inverse of decompose_germ.
JetMap reassemble_germ(const GermDecomposition& germ);

} // namespace germnf
