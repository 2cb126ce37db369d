#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germnf/homological.hpp"
#include "germnf/jet.hpp"
#include "germnf/linear.hpp"
#include "germnf/resonance.hpp"

namespace germnf {

/// The nine canonical normal-form shapes reachable when the degree-1 part
/// preserves the fixed line. The residual-index family splits on where the
/// index sits in the exceptional set.
enum class NormalFormCase {
    star1_generic,  // index outside E
    star1_zero,     // index 0
    star1_negrat,   // index -p/q
    star1_recip,    // index 1/q, q >= 2
    star1_posrat,   // index p/q, p >= 2, q <= contact order
    star1_one,      // index 1 (identity degree-1 template)
    J1,
    star2,
    J0,
};

std::string to_string(NormalFormCase c);

struct CaseTemplate {
    NormalFormCase kind = NormalFormCase::star1_generic;
    GaussQ lambda{0};
    long p = 0, q = 0; // set for negrat / recip / posrat
};

/// Ambient basis indices a normal form may carry at each stage degree d >= 2:
/// a complement of the image of the stage operator, matching the case's
/// template shape. Index 0 (the pure z2^d term in the first component) is
/// always allowed; it vanishes exactly for tangential germs.
std::vector<int> complement_basis(const CaseTemplate& tmpl, int contact_order, int d);

/// True when z1 divides the first component of the reduced map through its
/// truncation degree: the germ maps the fixed line into itself.
bool is_tangential(const GermDecomposition& germ);

/// Lowest-degree monomial where two jets differ.
struct Discrepancy {
    int component = 0;
    Mono mono;
    GaussQ lhs, rhs;
};

struct ConjugacyCheck {
    bool ok = false;
    std::optional<Discrepancy> first_mismatch;
};

/// Certify f o chi = chi o fhat coefficient-exactly through degree trunc,
/// reporting the lowest offending monomial on failure. Works for any
/// origin-fixing change of coordinates.
ConjugacyCheck verify_conjugacy(const JetMap& f, const JetMap& chi, const JetMap& fhat,
                                int trunc);

/// A univariate coefficient list c_0..c_bound for one template slot.
struct UniSeries {
    std::vector<GaussQ> coefficients;
    int degree_bound = -1; // -1: slot not reachable at this truncation
};

/// Template parameters of the computed normal form. Slots that do not belong
/// to the case stay disengaged (nullopt / bound -1 with empty coefficients).
struct TemplateParameters {
    std::optional<GaussQ> a;
    std::optional<UniSeries> t, g, g1, g2, p_o;
    std::optional<UniSeries> p_nu; // homogeneous: coefficient of z1^j z2^(order-j)
};

enum class VerifyStatus { verified, failed, skipped };

struct NormalFormReport {
    int contact_order = 1;        // nu
    int pure_order = 1;           // mu
    int working_degree = 2;       // truncation everything is exact modulo

    std::optional<LinearClass> linear_class;
    std::optional<LinearChange> linear_change;
    GaussQ scale1{1}, scale2{1};  // residual diagonal factor on the template
    std::optional<std::string> unmet_root_equation;

    std::optional<CaseTemplate> case_template;
    std::optional<EMembership> exceptional;
    bool non_canonical = false;   // pure order >= 2, or the pipeline stopped
                                  // after the linear stage

    JetMap normal_form;           // the full map, id + ...
    JetMap coordinate_change;     // tangent to identity, fixed line preserved
    bool tangential = false;

    TemplateParameters parameters;

    VerifyStatus verified = VerifyStatus::skipped;
    std::optional<Discrepancy> discrepancy;

    NormalFormReport() : normal_form(0), coordinate_change(0) {}
};

struct NormalizeOptions {
    bool permissive_scale = false;
    bool verify = true;
};

/// Degree-by-degree normalization: linear stage, then for each degree remove
/// the image-of-the-operator part with a polynomial change of coordinates,
/// conjugating by exact composition. The certificate re-checks the conjugacy
/// by composing both ways. Pure order >= 2 runs the same reduction with a
/// greedy complement and no case label.
NormalFormReport normalize(const JetMap& f, int degree, const NormalizeOptions& options);

/// Case dispatch from the linear class and the exceptional-set verdict.
CaseTemplate dispatch_case(const LinearClass& cls, const EMembership& membership);

} // namespace germnf
