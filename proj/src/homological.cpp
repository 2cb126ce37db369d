#include "germnf/homological.hpp"

#include <algorithm>
#include <stdexcept>

#include "germnf/errors.hpp"

namespace germnf {

OperatorMatrix::OperatorMatrix(int contact_order, int pure_order, int stage_degree)
    : nu_(contact_order), mu_(pure_order), d_(stage_degree) {
    if (nu_ < 1 || mu_ < 1 || d_ < 2)
        throw std::invalid_argument("operator matrix needs nu, mu >= 1 and d >= 2");
    entries_.resize(static_cast<size_t>(rows()) * static_cast<size_t>(cols()));
}

const GaussQ& OperatorMatrix::at(int r, int c) const {
    return entries_.at(static_cast<size_t>(r) * static_cast<size_t>(cols()) +
                       static_cast<size_t>(c));
}

GaussQ& OperatorMatrix::at(int r, int c) {
    return entries_.at(static_cast<size_t>(r) * static_cast<size_t>(cols()) +
                       static_cast<size_t>(c));
}

HomPair OperatorMatrix::apply(const HomPair& h) const {
    if (h.degree() != d_) throw std::invalid_argument("stage degree mismatch");
    HomPair out(d_ + mu_ - 1);
    for (int c = 0; c < cols(); ++c) {
        const GaussQ& x = h[c + 1];
        if (x.is_zero()) continue;
        for (int r = 0; r < rows(); ++r) {
            const GaussQ& m = at(r, c);
            if (!m.is_zero()) out[r] += m * x;
        }
    }
    return out;
}

HomPair OperatorMatrix::column(int c) const {
    HomPair out(d_ + mu_ - 1);
    for (int r = 0; r < rows(); ++r) out[r] = at(r, c);
    return out;
}

namespace {

/// Homogeneous scalar polynomial of fixed total degree, indexed by the
/// z1-exponent.
using ScalarHom = std::vector<GaussQ>;

ScalarHom first_component(const HomPair& p) {
    ScalarHom s(static_cast<size_t>(p.degree()) + 1);
    for (int h = 0; h <= p.degree(); ++h) s[static_cast<size_t>(h)] = p[h];
    return s;
}

ScalarHom second_component(const HomPair& p) {
    ScalarHom s(static_cast<size_t>(p.degree()) + 1);
    for (int k = 0; k <= p.degree(); ++k)
        s[static_cast<size_t>(k)] = p[HomPair::second_index(p.degree(), k)];
    return s;
}

ScalarHom d_z1(const ScalarHom& s) {
    // d/dz1 of z1^k z2^(m-k) = k z1^(k-1) z2^(m-k)
    if (s.size() <= 1) return {};
    ScalarHom out(s.size() - 1);
    for (size_t k = 1; k < s.size(); ++k)
        out[k - 1] = s[k] * GaussQ(static_cast<long>(k));
    return out;
}

ScalarHom d_z2(const ScalarHom& s) {
    // d/dz2 of z1^k z2^(m-k) = (m-k) z1^k z2^(m-k-1)
    if (s.size() <= 1) return {};
    int m = static_cast<int>(s.size()) - 1;
    ScalarHom out(s.size() - 1);
    for (size_t k = 0; k + 1 < s.size(); ++k)
        out[k] = s[k] * GaussQ(static_cast<long>(m) - static_cast<long>(k));
    return out;
}

ScalarHom mul(const ScalarHom& a, const ScalarHom& b) {
    if (a.empty() || b.empty()) return {};
    ScalarHom out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

void accumulate(ScalarHom& acc, const ScalarHom& t, const GaussQ& scale) {
    for (size_t i = 0; i < t.size(); ++i) acc[i] += t[i] * scale;
}

} // namespace

HomPair operator_apply(const HomPair& p, int contact_order, const HomPair& h) {
    if (!h.in_constrained_space())
        throw std::invalid_argument("argument outside the constrained space V_d");
    int mu = p.degree(), d = h.degree();
    GaussQ nu(static_cast<long>(contact_order));

    ScalarHom p1 = first_component(p), p2 = second_component(p);
    ScalarHom h1 = first_component(h), h2 = second_component(h);
    // H_1 = z1 * check_H1
    ScalarHom h1_over_z1(h1.begin() + 1, h1.end());

    size_t out_terms = static_cast<size_t>(d + mu - 1) + 1;
    ScalarHom out1(out_terms), out2(out_terms);

    // Jac(P) . H
    accumulate(out1, mul(d_z1(p1), h1), GaussQ(1));
    accumulate(out1, mul(d_z2(p1), h2), GaussQ(1));
    accumulate(out2, mul(d_z1(p2), h1), GaussQ(1));
    accumulate(out2, mul(d_z2(p2), h2), GaussQ(1));
    // - Jac(H) . P
    accumulate(out1, mul(d_z1(h1), p1), GaussQ(-1));
    accumulate(out1, mul(d_z2(h1), p2), GaussQ(-1));
    accumulate(out2, mul(d_z1(h2), p1), GaussQ(-1));
    accumulate(out2, mul(d_z2(h2), p2), GaussQ(-1));
    // + nu * (H_1/z1) * P
    accumulate(out1, mul(h1_over_z1, p1), nu);
    accumulate(out2, mul(h1_over_z1, p2), nu);

    HomPair out(d + mu - 1);
    for (int e = 0; e <= d + mu - 1; ++e) {
        out[HomPair::first_index(d + mu - 1, e)] = out1[static_cast<size_t>(e)];
        out[HomPair::second_index(d + mu - 1, e)] = out2[static_cast<size_t>(e)];
    }
    return out;
}

OperatorMatrix operator_matrix(const HomPair& p, int contact_order, int stage_degree) {
    int mu = p.degree(), d = stage_degree, nu = contact_order;
    OperatorMatrix m(nu, mu, d);
    int out_deg = d + mu - 1;

    auto a1 = [&](int i) { return i < 0 || i > mu ? GaussQ(0) : p[i]; };
    auto a2 = [&](int i) {
        return i < 0 || i > mu ? GaussQ(0) : p[HomPair::second_index(mu, i)];
    };
    // Edge summands with an out-of-range output exponent carry a provably zero
    // coefficient (the padding conventions a1(mu+1) = a2(-1) = 0 and the
    // (d-h), k factors); anything else is a bug.
    auto add_first = [&](int exp, int col, const GaussQ& v) {
        if (v.is_zero()) return;
        if (exp < 0 || exp > out_deg) throw internal_error("operator exponent out of range");
        m.at(HomPair::first_index(out_deg, exp), col) += v;
    };
    auto add_second = [&](int exp, int col, const GaussQ& v) {
        if (v.is_zero()) return;
        if (exp < 0 || exp > out_deg) throw internal_error("operator exponent out of range");
        m.at(HomPair::second_index(out_deg, exp), col) += v;
    };

    // Action on (z1^h z2^(d-h), 0), h = 1..d: both output components land on
    // z1-exponent h+i-1.
    for (int h = 1; h <= d; ++h) {
        int col = h - 1;
        for (int i = 0; i <= mu + 1; ++i)
            add_first(h + i - 1, col,
                      GaussQ(nu + i - h) * a1(i) - GaussQ(d - h) * a2(i - 1));
        for (int i = 0; i <= mu; ++i)
            add_second(h + i - 1, col, GaussQ(nu + i) * a2(i));
    }

    // Action on (0, z1^k z2^(d-k)), k = 0..d: first component lands on
    // z1-exponent k+i, second on k+i-1.
    for (int k = 0; k <= d; ++k) {
        int col = d + k;
        for (int i = 0; i <= mu - 1; ++i)
            add_first(k + i, col, GaussQ(mu - i) * a1(i));
        for (int i = 0; i <= mu + 1; ++i)
            add_second(k + i - 1, col,
                       GaussQ(mu + k + 1 - d - i) * a2(i - 1) - GaussQ(k) * a1(i));
    }
    return m;
}

namespace {

int matrix_rank(const OperatorMatrix& m) {
    std::vector<std::vector<GaussQ>> a(static_cast<size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        a[static_cast<size_t>(r)].resize(static_cast<size_t>(m.cols()));
        for (int c = 0; c < m.cols(); ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = m.at(r, c);
    }
    size_t pos = 0;
    for (int c = 0; c < m.cols() && pos < a.size(); ++c) {
        size_t piv = pos;
        while (piv < a.size() && a[piv][static_cast<size_t>(c)].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[pos], a[piv]);
        for (size_t r = pos + 1; r < a.size(); ++r) {
            if (a[r][static_cast<size_t>(c)].is_zero()) continue;
            GaussQ f = a[r][static_cast<size_t>(c)] / a[pos][static_cast<size_t>(c)];
            for (int cc = c; cc < m.cols(); ++cc)
                a[r][static_cast<size_t>(cc)] -= f * a[pos][static_cast<size_t>(cc)];
        }
        ++pos;
    }
    return static_cast<int>(pos);
}

} // namespace

StageSolution solve_stage(const HomPair& target, const OperatorMatrix& m,
                          const std::vector<int>& complement) {
    int target_degree = m.stage_degree() + m.pure_order() - 1;
    if (target.degree() != target_degree)
        throw std::invalid_argument("target degree does not match the operator");

    std::vector<bool> in_complement(static_cast<size_t>(m.rows()), false);
    for (int idx : complement) {
        if (idx < 0 || idx >= m.rows())
            throw internal_error("complement index out of range");
        if (in_complement[static_cast<size_t>(idx)])
            throw internal_error("duplicate complement index");
        in_complement[static_cast<size_t>(idx)] = true;
    }

    // Rows outside the complement, augmented with the target.
    std::vector<std::vector<GaussQ>> a;
    for (int r = 0; r < m.rows(); ++r) {
        if (in_complement[static_cast<size_t>(r)]) continue;
        std::vector<GaussQ> row(static_cast<size_t>(m.cols()) + 1);
        for (int c = 0; c < m.cols(); ++c) row[static_cast<size_t>(c)] = m.at(r, c);
        row.back() = target[r];
        a.push_back(std::move(row));
    }

    // Forward elimination, columns in basis order, pivot = first nonzero row.
    std::vector<std::pair<int, size_t>> pivots; // (column, row position)
    size_t pos = 0;
    for (int c = 0; c < m.cols() && pos < a.size(); ++c) {
        size_t piv = pos;
        while (piv < a.size() && a[piv][static_cast<size_t>(c)].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[pos], a[piv]);
        for (size_t r = pos + 1; r < a.size(); ++r) {
            if (a[r][static_cast<size_t>(c)].is_zero()) continue;
            GaussQ f = a[r][static_cast<size_t>(c)] / a[pos][static_cast<size_t>(c)];
            for (size_t cc = static_cast<size_t>(c); cc < a[r].size(); ++cc)
                a[r][cc] -= f * a[pos][cc];
        }
        pivots.emplace_back(c, pos);
        ++pos;
    }

    // Spanning validation: dropping the complement rows must not lose rank,
    // and image + complement must fill the ambient space.
    int rank_full = matrix_rank(m);
    if (static_cast<int>(pos) != rank_full ||
        rank_full + static_cast<int>(complement.size()) != m.rows())
        throw internal_error("complement does not span a complement of the image");
    for (size_t r = pos; r < a.size(); ++r)
        if (!a[r].back().is_zero())
            throw internal_error("target not reachable modulo the complement");

    // Back substitution; free columns stay zero.
    std::vector<GaussQ> x(static_cast<size_t>(m.cols()));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [c, rp] = *it;
        GaussQ s = a[rp].back();
        for (int cc = c + 1; cc < m.cols(); ++cc)
            s -= a[rp][static_cast<size_t>(cc)] * x[static_cast<size_t>(cc)];
        x[static_cast<size_t>(c)] = s / a[rp][static_cast<size_t>(c)];
    }

    StageSolution out(m.stage_degree(), target_degree);
    for (int c = 0; c < m.cols(); ++c) out.solution[c + 1] = x[static_cast<size_t>(c)];
    HomPair reached = m.apply(out.solution);
    out.residual = target - reached;

    // Reconstruction check, on every invocation.
    for (int r = 0; r < m.rows(); ++r) {
        if (!in_complement[static_cast<size_t>(r)] && !out.residual[r].is_zero())
            throw internal_error("stage residual leaked outside the complement");
        if (!(reached[r] + out.residual[r] == target[r]))
            throw internal_error("stage reconstruction mismatch");
    }
    return out;
}

std::vector<int> greedy_complement(const OperatorMatrix& m) {
    // Column echelon basis of the image; leading row = first nonzero ambient
    // index. The non-leading rows are a complement.
    std::vector<std::vector<GaussQ>> echelon; // indexed by entries below
    std::vector<int> lead_of; // echelon position -> leading row
    std::vector<int> lead_at(static_cast<size_t>(m.rows()), -1);

    for (int c = 0; c < m.cols(); ++c) {
        std::vector<GaussQ> v(static_cast<size_t>(m.rows()));
        for (int r = 0; r < m.rows(); ++r) v[static_cast<size_t>(r)] = m.at(r, c);
        for (;;) {
            int lead = -1;
            for (int r = 0; r < m.rows(); ++r)
                if (!v[static_cast<size_t>(r)].is_zero()) { lead = r; break; }
            if (lead < 0) break;
            int e = lead_at[static_cast<size_t>(lead)];
            if (e < 0) {
                lead_at[static_cast<size_t>(lead)] = static_cast<int>(echelon.size());
                lead_of.push_back(lead);
                echelon.push_back(std::move(v));
                break;
            }
            const auto& basis = echelon[static_cast<size_t>(e)];
            GaussQ f = v[static_cast<size_t>(lead)] / basis[static_cast<size_t>(lead)];
            for (int r = lead; r < m.rows(); ++r)
                v[static_cast<size_t>(r)] -= f * basis[static_cast<size_t>(r)];
        }
    }

    std::vector<int> complement;
    for (int r = 0; r < m.rows(); ++r)
        if (lead_at[static_cast<size_t>(r)] < 0) complement.push_back(r);
    return complement;
}

} // namespace germnf
