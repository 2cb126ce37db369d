#include "germnf/jet.hpp"

#include <stdexcept>
#include <utility>

#include "germnf/errors.hpp"

namespace germnf {

HomPair::HomPair(int degree)
    : degree_(degree), coeff_(static_cast<size_t>(2 * degree + 2)) {
    if (degree < 0) throw std::invalid_argument("negative homogeneous degree");
}

bool HomPair::is_zero() const {
    for (const auto& c : coeff_)
        if (!c.is_zero()) return false;
    return true;
}

HomPair& HomPair::operator+=(const HomPair& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("degree mismatch");
    for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
    return *this;
}

HomPair& HomPair::operator-=(const HomPair& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("degree mismatch");
    for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
    return *this;
}

HomPair HomPair::operator-() const {
    HomPair r(degree_);
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] = -coeff_[i];
    return r;
}

HomPair HomPair::scaled(const GaussQ& c) const {
    HomPair r(degree_);
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] = coeff_[i] * c;
    return r;
}

JetMap::JetMap(int truncation) : trunc_(truncation) {
    if (truncation < 0) throw std::invalid_argument("negative truncation degree");
}

JetMap JetMap::identity(int truncation) {
    JetMap id(truncation);
    id.set_coeff(0, 1, 0, GaussQ(1));
    id.set_coeff(1, 0, 1, GaussQ(1));
    return id;
}

GaussQ JetMap::coeff(int component, int e1, int e2) const {
    const auto& terms = comp_.at(static_cast<size_t>(component));
    auto it = terms.find(Mono{e1, e2});
    return it == terms.end() ? GaussQ(0) : it->second;
}

void JetMap::add_coeff(int component, int e1, int e2, const GaussQ& value) {
    if (value.is_zero() || e1 + e2 > trunc_) return;
    auto& terms = comp_.at(static_cast<size_t>(component));
    Mono key{e1, e2};
    auto [it, inserted] = terms.emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) terms.erase(it);
    }
}

void JetMap::set_coeff(int component, int e1, int e2, const GaussQ& value) {
    auto& terms = comp_.at(static_cast<size_t>(component));
    Mono key{e1, e2};
    if (value.is_zero() || e1 + e2 > trunc_) {
        terms.erase(key);
        return;
    }
    terms[key] = value;
}

bool JetMap::is_zero() const { return comp_[0].empty() && comp_[1].empty(); }

int JetMap::lowest_degree() const {
    int low = trunc_ + 1;
    for (const auto& terms : comp_)
        for (const auto& [m, c] : terms)
            if (m.degree() < low) low = m.degree();
    return low;
}

int JetMap::z1_valuation() const {
    int v = trunc_ + 1;
    for (const auto& terms : comp_)
        for (const auto& [m, c] : terms)
            if (m.e1 < v) v = m.e1;
    return v;
}

bool JetMap::first_component_z1_divisible() const {
    for (const auto& [m, c] : comp_[0])
        if (m.e1 == 0) return false;
    return true;
}

JetMap JetMap::with_truncation(int truncation) const {
    JetMap r(truncation);
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : comp_[static_cast<size_t>(i)])
            if (m.degree() <= truncation) r.comp_[static_cast<size_t>(i)].emplace(m, c);
    return r;
}

HomPair JetMap::part(int degree) const {
    HomPair p(degree);
    for (const auto& [m, c] : comp_[0])
        if (m.degree() == degree) p[HomPair::first_index(degree, m.e1)] = c;
    for (const auto& [m, c] : comp_[1])
        if (m.degree() == degree) p[HomPair::second_index(degree, m.e1)] = c;
    return p;
}

void JetMap::add_part(const HomPair& p) {
    int d = p.degree();
    for (int h = 0; h <= d; ++h) add_coeff(0, h, d - h, p[HomPair::first_index(d, h)]);
    for (int k = 0; k <= d; ++k) add_coeff(1, k, d - k, p[HomPair::second_index(d, k)]);
}

JetMap JetMap::shifted_up(int k) const {
    JetMap r(trunc_ + k);
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : comp_[static_cast<size_t>(i)])
            r.add_coeff(i, m.e1 + k, m.e2, c);
    return r;
}

JetMap JetMap::shifted_down(int k) const {
    JetMap r(trunc_ - k);
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : comp_[static_cast<size_t>(i)]) {
            if (m.e1 < k) throw std::invalid_argument("jet not divisible by z1^k");
            r.comp_[static_cast<size_t>(i)].emplace(Mono{m.e1 - k, m.e2}, c);
        }
    return r;
}

JetMap& JetMap::operator+=(const JetMap& o) {
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : o.comp_[static_cast<size_t>(i)])
            add_coeff(i, m.e1, m.e2, c);
    return *this;
}

JetMap& JetMap::operator-=(const JetMap& o) {
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : o.comp_[static_cast<size_t>(i)])
            add_coeff(i, m.e1, m.e2, -c);
    return *this;
}

JetMap JetMap::operator-() const { return scaled(GaussQ(-1)); }

JetMap JetMap::scaled(const GaussQ& c) const {
    JetMap r(trunc_);
    if (c.is_zero()) return r;
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, v] : comp_[static_cast<size_t>(i)])
            r.comp_[static_cast<size_t>(i)].emplace(m, v * c);
    return r;
}

namespace {

using Terms = JetMap::Terms;

Terms terms_mul(const Terms& a, const Terms& b, int trunc) {
    Terms out;
    for (const auto& [ma, ca] : a) {
        if (ma.degree() > trunc) continue;
        for (const auto& [mb, cb] : b) {
            Mono m{ma.e1 + mb.e1, ma.e2 + mb.e2};
            if (m.degree() > trunc) continue;
            GaussQ v = ca * cb;
            if (v.is_zero()) continue;
            auto [it, inserted] = out.emplace(m, v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

void terms_add_scaled(Terms& acc, const Terms& t, const GaussQ& scale, int trunc) {
    for (const auto& [m, c] : t) {
        if (m.degree() > trunc) continue;
        GaussQ v = c * scale;
        if (v.is_zero()) continue;
        auto [it, inserted] = acc.emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

Terms terms_derivative(const Terms& t, int var, int trunc) {
    Terms out;
    for (const auto& [m, c] : t) {
        int e = var == 0 ? m.e1 : m.e2;
        if (e == 0) continue;
        Mono d = var == 0 ? Mono{m.e1 - 1, m.e2} : Mono{m.e1, m.e2 - 1};
        if (d.degree() > trunc) continue;
        out.emplace(d, c * GaussQ(e));
    }
    return out;
}

} // namespace

JetMap jet_compose(const JetMap& f, const JetMap& g, int trunc) {
    if (!g.coeff(0, 0, 0).is_zero() || !g.coeff(1, 0, 0).is_zero())
        throw std::invalid_argument("composition with a map not fixing the origin");
    if (f.truncation() < trunc || g.truncation() < trunc)
        throw std::invalid_argument("inputs truncated below the requested degree");

    // Powers g1^a g2^b are cached; each substituted monomial of f needs one.
    std::vector<Terms> pow1, pow2;
    pow1.push_back(Terms{{Mono{0, 0}, GaussQ(1)}});
    pow2.push_back(Terms{{Mono{0, 0}, GaussQ(1)}});
    auto power = [&](std::vector<Terms>& cache, const Terms& base, int e) -> const Terms& {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(terms_mul(cache.back(), base, trunc));
        return cache[static_cast<size_t>(e)];
    };

    JetMap out(trunc);
    for (int i = 0; i < 2; ++i) {
        Terms acc;
        for (const auto& [m, c] : f.component(i)) {
            if (m.degree() > trunc) continue;
            const Terms& p1 = power(pow1, g.component(0), m.e1);
            const Terms& p2 = power(pow2, g.component(1), m.e2);
            terms_add_scaled(acc, terms_mul(p1, p2, trunc), c, trunc);
        }
        for (const auto& [m, c] : acc) out.add_coeff(i, m.e1, m.e2, c);
    }
    return out;
}

JetMap jet_invert(const JetMap& chi, int trunc) {
    JetMap id = JetMap::identity(trunc);
    JetMap nonlinear = chi.with_truncation(trunc) - id;
    if (!nonlinear.is_zero() && nonlinear.lowest_degree() < 2)
        throw std::invalid_argument("inverting a map not tangent to the identity");

    // K = id - (chi - id) o K gains one exact degree per pass.
    JetMap inv = id;
    for (int step = 2; step <= trunc; ++step) {
        JetMap next = id - jet_compose(nonlinear, inv, trunc);
        if (next == inv) break;
        inv = std::move(next);
    }
    return inv;
}

JetMap jacobian_apply(const JetMap& map, const JetMap& vec) {
    int trunc = std::min(map.truncation(), vec.truncation());
    JetMap out(trunc);
    for (int i = 0; i < 2; ++i) {
        Terms acc;
        for (int j = 0; j < 2; ++j) {
            Terms dij = terms_derivative(map.component(i), j, trunc);
            terms_add_scaled(acc, terms_mul(dij, vec.component(j), trunc), GaussQ(1), trunc);
        }
        for (const auto& [m, c] : acc) out.add_coeff(i, m.e1, m.e2, c);
    }
    return out;
}

GermDecomposition decompose_germ(const JetMap& f) {
    int degree = f.truncation();
    JetMap diff = f - JetMap::identity(degree);
    if (diff.is_zero())
        throw hypothesis_error(hypothesis_error::kind::degenerate,
                               "the map is the identity through the working degree");
    if (diff.lowest_degree() < 2)
        throw hypothesis_error(hypothesis_error::kind::not_tangent,
                               "the map is not tangent to the identity");
    int nu = diff.z1_valuation();
    if (nu == 0)
        throw hypothesis_error(hypothesis_error::kind::fixed_line,
                               "f - id is not divisible by z1: the line {z1=0} is not fixed");

    GermDecomposition germ;
    germ.contact_order = nu;
    germ.degree = degree;
    germ.reduced = diff.shifted_down(nu);
    if (!germ.reduced.coeff(0, 0, 0).is_zero() || !germ.reduced.coeff(1, 0, 0).is_zero())
        throw hypothesis_error(hypothesis_error::kind::singular_origin,
                               "the reduced map does not vanish at the origin");
    germ.pure_order = germ.reduced.lowest_degree();
    return germ;
}

JetMap reassemble_germ(const GermDecomposition& germ) {
    JetMap f = JetMap::identity(germ.degree);
    f += germ.reduced.shifted_up(germ.contact_order).with_truncation(germ.degree);
    return f;
}

} // namespace germnf
