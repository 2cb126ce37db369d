#include "germnf/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "germnf/errors.hpp"

namespace germnf {

std::string to_string(NormalFormCase c) {
    switch (c) {
        case NormalFormCase::star1_generic: return "star1_generic";
        case NormalFormCase::star1_zero: return "star1_zero";
        case NormalFormCase::star1_negrat: return "star1_negrat";
        case NormalFormCase::star1_recip: return "star1_recip";
        case NormalFormCase::star1_posrat: return "star1_posrat";
        case NormalFormCase::star1_one: return "star1_one";
        case NormalFormCase::J1: return "J1";
        case NormalFormCase::star2: return "star2";
        case NormalFormCase::J0: return "J0";
    }
    return "?";
}

std::vector<int> complement_basis(const CaseTemplate& tmpl, int contact_order, int d) {
    if (d < 2) throw std::invalid_argument("stage degree must be at least 2");
    int nu = contact_order;
    std::vector<int> kept{0}; // the z2^d obstruction is never removable

    switch (tmpl.kind) {
        case NormalFormCase::star1_generic:
            if (d == nu + 1) kept.push_back(nu + 1);
            break;
        case NormalFormCase::star1_zero:
            kept.push_back(d); // pure z1 powers
            break;
        case NormalFormCase::star1_negrat: {
            long step = tmpl.p + tmpl.q;
            // z1 (z1^q z2^p)^l, traded for the vanishing tau entries
            if ((d - 1) % step == 0 && (d - 1) / step >= 1)
                kept.push_back(static_cast<int>(1 + tmpl.q * ((d - 1) / step)));
            // z1^(nu+1) (z1^q z2^p)^l from the vanishing sigma entries
            if (d - nu - 1 >= 0 && (d - nu - 1) % step == 0)
                kept.push_back(static_cast<int>(nu + 1 + tmpl.q * ((d - nu - 1) / step)));
            break;
        }
        case NormalFormCase::star1_one:
            if (d == nu + 1)
                for (int h = 1; h <= nu + 1; ++h) kept.push_back(h);
            break;
        case NormalFormCase::star1_recip:
            for (long l = 0; l * tmpl.q <= nu; ++l)
                if (d == nu + 1 - l * (tmpl.q - 1))
                    kept.push_back(static_cast<int>(nu + 1 - tmpl.q * l));
            if (d == tmpl.q) kept.push_back(2 * d + 1); // the (0, z1^q) direction
            break;
        case NormalFormCase::star1_posrat:
            for (long l = 0; l * tmpl.q <= nu; ++l)
                if (d == nu + 1 + l * (tmpl.p - tmpl.q))
                    kept.push_back(static_cast<int>(nu + 1 - tmpl.q * l));
            break;
        case NormalFormCase::J1:
            if (d == nu + 1) kept.push_back(1); // a z1 z2^nu
            break;
        case NormalFormCase::star2:
            if (d >= nu + 1) kept.push_back(nu + 1);
            kept.push_back(d + 1); // (0, z2^d)
            break;
        case NormalFormCase::J0:
            kept.push_back(1);     // z1 z2^(d-1)
            kept.push_back(d + 1); // (0, z2^d)
            break;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

bool is_tangential(const GermDecomposition& germ) {
    return germ.reduced.first_component_z1_divisible();
}

ConjugacyCheck verify_conjugacy(const JetMap& f, const JetMap& chi, const JetMap& fhat,
                                int trunc) {
    JetMap lhs = jet_compose(f.with_truncation(trunc), chi.with_truncation(trunc), trunc);
    JetMap rhs = jet_compose(chi.with_truncation(trunc), fhat.with_truncation(trunc), trunc);
    JetMap diff = lhs - rhs;
    ConjugacyCheck out;
    if (diff.is_zero()) {
        out.ok = true;
        return out;
    }
    for (int i = 0; i < 2; ++i) {
        for (const auto& [m, c] : diff.component(i)) {
            (void)c;
            bool better = !out.first_mismatch ||
                          m.degree() < out.first_mismatch->mono.degree() ||
                          (m.degree() == out.first_mismatch->mono.degree() &&
                           (i < out.first_mismatch->component ||
                            (i == out.first_mismatch->component &&
                             m < out.first_mismatch->mono)));
            if (better)
                out.first_mismatch = Discrepancy{i, m, lhs.coeff(i, m.e1, m.e2),
                                                 rhs.coeff(i, m.e1, m.e2)};
        }
    }
    return out;
}

CaseTemplate dispatch_case(const LinearClass& cls, const EMembership& membership) {
    CaseTemplate t;
    switch (cls.label) {
        case LinearClassLabel::J_1:
            t.kind = NormalFormCase::J1;
            t.lambda = GaussQ(1);
            return t;
        case LinearClassLabel::star_2:
            t.kind = NormalFormCase::star2;
            t.lambda = GaussQ(1);
            return t;
        case LinearClassLabel::J_0:
            t.kind = NormalFormCase::J0;
            return t;
        case LinearClassLabel::star_1_1:
            t.kind = NormalFormCase::star1_one;
            t.lambda = GaussQ(1);
            return t;
        case LinearClassLabel::star_1_lambda:
            break;
        default:
            throw std::invalid_argument("no canonical template for this linear class");
    }

    t.lambda = *cls.lambda;
    if (!membership.member) {
        t.kind = NormalFormCase::star1_generic;
        return t;
    }
    switch (membership.component) {
        case EMembership::Component::negative_rational:
            t.kind = NormalFormCase::star1_negrat;
            t.p = membership.p;
            t.q = membership.q;
            break;
        case EMembership::Component::zero:
            t.kind = NormalFormCase::star1_zero;
            break;
        case EMembership::Component::reciprocal_integer:
            t.kind = NormalFormCase::star1_recip;
            t.p = 1;
            t.q = membership.q;
            break;
        case EMembership::Component::positive_over_q:
            if (membership.p < 2) throw internal_error("positive dispatch expects p >= 2");
            t.kind = NormalFormCase::star1_posrat;
            t.p = membership.p;
            t.q = membership.q;
            break;
        case EMembership::Component::none:
            throw internal_error("member verdict without a component");
    }
    return t;
}

namespace {

UniSeries series_from(const JetMap& reduced, int component, int e1_base, int e2_base,
                      int e1_step, int e2_step, int count) {
    // Coefficients of (z1,z2)-progression monomials; count entries, which the
    // caller has checked to stay within the truncation.
    UniSeries s;
    s.degree_bound = count - 1;
    for (int j = 0; j < count; ++j)
        s.coefficients.push_back(
            reduced.coeff(component, e1_base + j * e1_step, e2_base + j * e2_step));
    return s;
}

TemplateParameters extract_parameters(const CaseTemplate& tmpl,
                                      const GermDecomposition& germ) {
    TemplateParameters out;
    const JetMap& fo = germ.reduced;
    int nu = germ.contact_order;
    int top = fo.truncation(); // working degree minus contact order

    // t: coefficients of (z2^(2+j), 0), shared by every case
    int t_count = top - 1; // degrees 2..top
    out.t = t_count > 0 ? series_from(fo, 0, 0, 2, 0, 1, t_count) : UniSeries{};

    switch (tmpl.kind) {
        case NormalFormCase::star1_generic:
            if (nu + 1 <= top) out.a = fo.coeff(0, nu + 1, 0);
            break;
        case NormalFormCase::star1_zero:
            out.g = t_count > 0 ? series_from(fo, 0, 2, 0, 1, 0, t_count) : UniSeries{};
            break;
        case NormalFormCase::star1_negrat: {
            int step = static_cast<int>(tmpl.p + tmpl.q);
            int n1 = (top - 1) / step + 1;
            out.g1 = series_from(fo, 0, 1, 0, static_cast<int>(tmpl.q),
                                 static_cast<int>(tmpl.p), n1);
            int n2 = top - nu - 1 >= 0 ? (top - nu - 1) / step + 1 : 0;
            out.g2 = n2 > 0
                         ? series_from(fo, 0, nu + 1, 0, static_cast<int>(tmpl.q),
                                       static_cast<int>(tmpl.p), n2)
                         : UniSeries{};
            break;
        }
        case NormalFormCase::star1_one:
            if (nu + 1 <= top)
                out.p_nu = series_from(fo, 0, 1, nu, 1, -1, nu + 1);
            else
                out.p_nu = UniSeries{};
            break;
        case NormalFormCase::star1_recip: {
            int q = static_cast<int>(tmpl.q);
            if (q <= top) out.a = fo.coeff(1, q, 0);
            if (nu + 1 <= top) // highest slot degree is nu+1, at l = 0
                out.p_o = series_from(fo, 0, nu + 1, 0, -q, 1, nu / q + 1);
            else
                out.p_o = UniSeries{};
            break;
        }
        case NormalFormCase::star1_posrat: {
            int q = static_cast<int>(tmpl.q), p = static_cast<int>(tmpl.p);
            int slots = nu / q + 1;
            int max_degree = nu + 1;
            for (int l = 0; l < slots; ++l)
                max_degree = std::max(max_degree, nu + 1 + l * (p - q));
            if (max_degree <= top)
                out.p_o = series_from(fo, 0, nu + 1, 0, -q, p, slots);
            else
                out.p_o = UniSeries{};
            break;
        }
        case NormalFormCase::J1:
            if (nu + 1 <= top) out.a = fo.coeff(0, 1, nu);
            break;
        case NormalFormCase::star2: {
            int n1 = top - nu; // degrees nu+1 .. top carry z1^(nu+1) z2^j
            out.g1 = n1 > 0 ? series_from(fo, 0, nu + 1, 0, 0, 1, n1) : UniSeries{};
            out.g2 = t_count > 0 ? series_from(fo, 1, 0, 2, 0, 1, t_count) : UniSeries{};
            break;
        }
        case NormalFormCase::J0:
            out.g1 = t_count > 0 ? series_from(fo, 0, 1, 1, 0, 1, t_count) : UniSeries{};
            out.g2 = t_count > 0 ? series_from(fo, 1, 0, 2, 0, 1, t_count) : UniSeries{};
            break;
    }
    return out;
}

void check_template_support(const CaseTemplate& tmpl, const GermDecomposition& germ) {
    for (int d = 2; d <= germ.reduced.truncation(); ++d) {
        HomPair part = germ.reduced.part(d);
        std::vector<int> kept = complement_basis(tmpl, germ.contact_order, d);
        for (int idx = 0; idx < part.size(); ++idx) {
            if (part[idx].is_zero()) continue;
            if (!std::binary_search(kept.begin(), kept.end(), idx))
                throw internal_error("normal form leaked outside the case template");
        }
    }
}

/// Shared stage loop: remove the image-of-the-operator part of the target
/// degree with a polynomial change id + H, conjugating by exact composition.
struct StageDriver {
    JetMap current;
    JetMap change;
    int degree;

    StageDriver(JetMap f, int working_degree)
        : current(std::move(f)), change(JetMap::identity(working_degree)),
          degree(working_degree) {}

    void run_stage(const HomPair& leading, int contact_order, int stage_degree,
                   const std::vector<int>& complement) {
        GermDecomposition germ = decompose_germ(current);
        if (germ.contact_order != contact_order)
            throw internal_error("contact order drifted across stages");
        int target_degree = stage_degree + leading.degree() - 1;
        HomPair target = germ.reduced.part(target_degree);
        OperatorMatrix m = operator_matrix(leading, contact_order, stage_degree);
        StageSolution sol = solve_stage(target, m, complement);

        if (!sol.solution.is_zero()) {
            JetMap chi_d = JetMap::identity(degree);
            chi_d.add_part(-sol.solution);
            current = jet_compose(jet_compose(jet_invert(chi_d, degree), current, degree),
                                  chi_d, degree);
            change = jet_compose(change, chi_d, degree);
        }
        if (!(decompose_germ(current).reduced.part(target_degree) == sol.residual))
            throw internal_error("stage did not produce the solved residual");
    }
};

void certify(NormalFormReport& rep, const JetMap& input, const JetMap& post_linear,
             const NormalizeOptions& options) {
    if (!options.verify) {
        rep.verified = VerifyStatus::skipped;
        return;
    }
    int degree = rep.working_degree;
    ConjugacyCheck stage_check =
        verify_conjugacy(post_linear, rep.coordinate_change, rep.normal_form, degree);
    JetMap full_change = rep.linear_change
                             ? jet_compose(rep.linear_change->as_jet(degree),
                                           rep.coordinate_change, degree)
                             : rep.coordinate_change;
    ConjugacyCheck full_check = verify_conjugacy(input, full_change, rep.normal_form, degree);
    if (stage_check.ok && full_check.ok) {
        rep.verified = VerifyStatus::verified;
    } else {
        rep.verified = VerifyStatus::failed;
        rep.discrepancy =
            stage_check.ok ? full_check.first_mismatch : stage_check.first_mismatch;
    }
}

} // namespace

NormalFormReport normalize(const JetMap& f_in, int degree, const NormalizeOptions& options) {
    if (degree < 2) throw std::invalid_argument("working degree must be at least 2");
    JetMap f = f_in.with_truncation(degree);
    GermDecomposition germ = decompose_germ(f);

    NormalFormReport rep;
    rep.contact_order = germ.contact_order;
    rep.pure_order = germ.pure_order;
    rep.working_degree = degree;
    rep.tangential = is_tangential(germ);
    int nu = germ.contact_order;

    if (germ.pure_order >= 2) {
        // No canonical template at higher pure order: reduce degree by degree
        // against a greedy complement and skip the case machinery.
        rep.non_canonical = true;
        HomPair leading = germ.reduced.part(germ.pure_order);
        StageDriver driver(f, degree);
        for (int d = 2; germ.pure_order + d - 1 <= degree - nu; ++d) {
            OperatorMatrix m = operator_matrix(leading, nu, d);
            driver.run_stage(leading, nu, d, greedy_complement(m));
        }
        rep.normal_form = driver.current;
        rep.coordinate_change = driver.change;
        certify(rep, f, f, options);
        return rep;
    }

    LinearNormalization lin = normalize_linear(germ, options.permissive_scale);
    rep.linear_class = lin.cls;
    rep.linear_change = lin.change;
    rep.scale1 = lin.scale1;
    rep.scale2 = lin.scale2;
    rep.unmet_root_equation = lin.unmet_root_equation;
    JetMap post_linear = reassemble_germ(lin.germ);

    if (lin.cls.lambda)
        rep.exceptional = in_exceptional_set(*lin.cls.lambda, nu);
    else if (lin.cls.label == LinearClassLabel::star_1_1)
        rep.exceptional = in_exceptional_set(GaussQ(1), nu);

    if (!lin.cls.preserves_fixed_line) {
        // The case analysis needs the degree-1 part to fix {z1=0}; stop after
        // the linear stage.
        rep.non_canonical = true;
        rep.normal_form = post_linear;
        rep.coordinate_change = JetMap::identity(degree);
        certify(rep, f, post_linear, options);
        return rep;
    }

    EMembership membership = rep.exceptional ? *rep.exceptional : EMembership{};
    CaseTemplate tmpl = dispatch_case(lin.cls, membership);
    rep.case_template = tmpl;

    HomPair p1 = lin.germ.reduced.part(1);
    StageDriver driver(post_linear, degree);
    for (int d = 2; d <= degree - nu; ++d)
        driver.run_stage(p1, nu, d, complement_basis(tmpl, nu, d));

    rep.normal_form = driver.current;
    rep.coordinate_change = driver.change;

    GermDecomposition out_germ = decompose_germ(rep.normal_form);
    if (!(out_germ.reduced.part(1) == p1))
        throw internal_error("stages disturbed the degree-1 part");
    check_template_support(tmpl, out_germ);
    rep.parameters = extract_parameters(tmpl, out_germ);

    certify(rep, f, post_linear, options);
    return rep;
}

} // namespace germnf
