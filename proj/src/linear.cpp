#include "germnf/linear.hpp"

#include <stdexcept>

#include "germnf/errors.hpp"

namespace germnf {

std::string to_string(LinearClassLabel label) {
    switch (label) {
        case LinearClassLabel::T_lambda: return "T_lambda";
        case LinearClassLabel::N_1: return "N_1";
        case LinearClassLabel::N_0: return "N_0";
        case LinearClassLabel::star_1_lambda: return "star_1_lambda";
        case LinearClassLabel::J_1: return "J_1";
        case LinearClassLabel::star_1_1: return "star_1_1";
        case LinearClassLabel::star_2: return "star_2";
        case LinearClassLabel::J_0: return "J_0";
    }
    return "?";
}

LinearChange LinearChange::inverse() const {
    if (det().is_zero()) throw std::invalid_argument("singular linear change");
    LinearChange inv;
    inv.a11 = a11.inverse();
    inv.a22 = a22.inverse();
    inv.a21 = -(a21 / (a11 * a22));
    return inv;
}

JetMap LinearChange::as_jet(int truncation) const {
    JetMap j(truncation);
    j.set_coeff(0, 1, 0, a11);
    j.set_coeff(1, 1, 0, a21);
    j.set_coeff(1, 0, 1, a22);
    return j;
}

namespace {

struct P1Coeffs {
    GaussQ a10, a11, a20, a21; // P1 = (a10 z2 + a11 z1, a20 z2 + a21 z1)
};

P1Coeffs read_p1(const HomPair& p1) {
    if (p1.degree() != 1) throw std::invalid_argument("degree-1 part expected");
    return {p1[0], p1[1], p1[2], p1[3]};
}

} // namespace

LinearClass classify_linear(const HomPair& p1, int contact_order) {
    if (contact_order < 1) throw std::invalid_argument("contact order must be positive");
    if (p1.is_zero())
        throw std::invalid_argument("vanishing degree-1 part: pure order 1 is required");
    auto [a10, a11, a20, a21] = read_p1(p1);
    GaussQ tr = a11 + a20;
    GaussQ det = a11 * a20 - a10 * a21;

    LinearClass cls;
    cls.preserves_fixed_line = a10.is_zero();
    if (!a10.is_zero()) {
        if (!tr.is_zero()) {
            cls.label = LinearClassLabel::T_lambda;
            cls.lambda = -det / (tr * tr);
        } else if (!det.is_zero()) {
            cls.label = LinearClassLabel::N_1;
        } else {
            cls.label = LinearClassLabel::N_0;
        }
    } else if (!a20.is_zero()) {
        if (a11 != a20) {
            cls.label = LinearClassLabel::star_1_lambda;
            cls.lambda = a11 / a20; // the residual index along {z1=0}
        } else if (!a21.is_zero()) {
            cls.label = LinearClassLabel::J_1;
        } else {
            cls.label = LinearClassLabel::star_1_1;
        }
    } else {
        cls.label = !a11.is_zero() ? LinearClassLabel::star_2 : LinearClassLabel::J_0;
    }
    return cls;
}

HomPair linear_template(LinearClassLabel label, const GaussQ& lambda) {
    HomPair t(1);
    switch (label) {
        case LinearClassLabel::T_lambda: // (z1 + z2, lambda z1)
            t[0] = GaussQ(1); t[1] = GaussQ(1); t[3] = lambda;
            break;
        case LinearClassLabel::N_1: // (z2, z1)
            t[0] = GaussQ(1); t[3] = GaussQ(1);
            break;
        case LinearClassLabel::N_0: // (z2, 0)
            t[0] = GaussQ(1);
            break;
        case LinearClassLabel::star_1_lambda: // (lambda z1, z2)
            t[1] = lambda; t[2] = GaussQ(1);
            break;
        case LinearClassLabel::J_1: // (z1, z1 + z2)
            t[1] = GaussQ(1); t[2] = GaussQ(1); t[3] = GaussQ(1);
            break;
        case LinearClassLabel::star_1_1: // (z1, z2)
            t[1] = GaussQ(1); t[2] = GaussQ(1);
            break;
        case LinearClassLabel::star_2: // (z1, 0)
            t[1] = GaussQ(1);
            break;
        case LinearClassLabel::J_0: // (0, z1)
            t[3] = GaussQ(1);
            break;
    }
    return t;
}

GermDecomposition conjugate_germ_linear(const GermDecomposition& germ,
                                        const LinearChange& change) {
    int trunc = germ.reduced.truncation();
    JetMap substituted = jet_compose(germ.reduced, change.as_jet(trunc), trunc);
    LinearChange inv = change.inverse();
    GaussQ scale = change.a11.pow(germ.contact_order);

    JetMap out(trunc);
    for (const auto& [m, c] : substituted.component(0)) {
        out.add_coeff(0, m.e1, m.e2, inv.a11 * c * scale);
        out.add_coeff(1, m.e1, m.e2, inv.a21 * c * scale);
    }
    for (const auto& [m, c] : substituted.component(1))
        out.add_coeff(1, m.e1, m.e2, inv.a22 * c * scale);

    GermDecomposition result = germ;
    result.reduced = std::move(out);
    if (result.reduced.lowest_degree() != germ.pure_order)
        throw internal_error("linear conjugation changed the pure order");
    return result;
}

namespace {

std::string root_equation_text(int order, const GaussQ& rhs) {
    return "alpha11^" + std::to_string(order) + " = " + rhs.str();
}

/// Solve alpha^order = rhs in Q(i) with the canonical root choice.
std::optional<GaussQ> pick_root(const GaussQ& rhs, int order) {
    return nth_root(rhs, static_cast<unsigned>(order));
}

} // namespace

LinearNormalization normalize_linear(const GermDecomposition& germ, bool permissive) {
    if (germ.pure_order != 1)
        throw std::invalid_argument("linear normalization requires pure order 1");
    int nu = germ.contact_order;
    HomPair p1 = germ.reduced.part(1);
    LinearNormalization out;
    out.cls = classify_linear(p1, nu);
    auto [a10, a11, a20, a21] = read_p1(p1);
    GaussQ tr = a11 + a20;
    GaussQ det = a11 * a20 - a10 * a21;

    LinearChange A;
    GaussQ lambda(0);
    auto solve_scaling = [&](const GaussQ& rhs, int order) -> GaussQ {
        if (auto root = pick_root(rhs, order)) return *root;
        if (!permissive)
            throw root_not_in_field(root_equation_text(order, rhs),
                                    "scaling constraint has no root in Q(i): " +
                                        root_equation_text(order, rhs));
        out.unmet_root_equation = root_equation_text(order, rhs);
        return GaussQ(1);
    };

    switch (out.cls.label) {
        case LinearClassLabel::T_lambda: {
            lambda = *out.cls.lambda;
            A.a11 = solve_scaling(tr.inverse(), nu);
            A.a21 = A.a11 * a20 / a10;
            if (out.unmet_root_equation) {
                A.a22 = tr / a10;
                out.scale1 = out.scale2 = tr;
            } else {
                A.a22 = A.a11.pow(1 - nu) / a10;
            }
            break;
        }
        case LinearClassLabel::N_1: {
            A.a11 = solve_scaling(-det.inverse(), 2 * nu);
            A.a21 = A.a11 * a20 / a10;
            if (out.unmet_root_equation) {
                A.a22 = a10.inverse();
                out.scale2 = -det;
            } else {
                A.a22 = A.a11.pow(1 - nu) / a10;
            }
            break;
        }
        case LinearClassLabel::N_0:
            A.a21 = a20 / a10;
            A.a22 = a10.inverse();
            break;
        case LinearClassLabel::star_1_lambda: {
            lambda = *out.cls.lambda;
            A.a11 = solve_scaling(a20.inverse(), nu);
            A.a21 = -(A.a11 * a21 / (a20 - a11));
            if (out.unmet_root_equation) out.scale1 = out.scale2 = a20;
            break;
        }
        case LinearClassLabel::J_1: {
            lambda = GaussQ(1);
            A.a11 = solve_scaling(a20.inverse(), nu);
            if (out.unmet_root_equation) {
                A.a22 = a21 / a20;
                out.scale1 = out.scale2 = a20;
            } else {
                A.a22 = A.a11.pow(nu + 1) * a21;
            }
            break;
        }
        case LinearClassLabel::star_1_1: {
            lambda = GaussQ(1);
            A.a11 = solve_scaling(a20.inverse(), nu);
            if (out.unmet_root_equation) out.scale1 = out.scale2 = a20;
            break;
        }
        case LinearClassLabel::star_2: {
            lambda = GaussQ(1);
            A.a11 = solve_scaling(a11.inverse(), nu);
            A.a21 = A.a11 * a21 / a11;
            if (out.unmet_root_equation) out.scale1 = out.scale2 = a11;
            break;
        }
        case LinearClassLabel::J_0:
            lambda = GaussQ(0);
            A.a22 = a21;
            break;
    }

    out.change = A;
    out.germ = conjugate_germ_linear(germ, A);

    // The conjugated degree-1 part must be diag(scale1, scale2) * template.
    HomPair expected = linear_template(out.cls.label, lambda);
    expected[0] = expected[0] * out.scale1;
    expected[1] = expected[1] * out.scale1;
    expected[2] = expected[2] * out.scale2;
    expected[3] = expected[3] * out.scale2;
    if (!(out.germ.reduced.part(1) == expected))
        throw internal_error("linear normalization missed the class template");
    LinearClass recheck = classify_linear(out.germ.reduced.part(1), nu);
    if (recheck.label != out.cls.label || recheck.lambda != out.cls.lambda)
        throw internal_error("class label not stable under linear normalization");
    return out;
}

} // namespace germnf
