#pragma once

#include <optional>
#include <string>

#include "germnf/jet.hpp"

namespace germnf {

/// The eight classes of the degree-1 part of the reduced map. Writing
/// P1 = (a10*z2 + a11*z1, a20*z2 + a21*z1), the decision tree is
///   a10 != 0:            T_lambda (tr != 0), N_1 (tr = 0, det != 0), N_0 (tr = det = 0)
///   a10 = 0, a20 != 0:   star_1_lambda (a11 != a20), J_1 (equal, a21 != 0), star_1_1 (equal, a21 = 0)
///   a10 = a20 = 0:       star_2 (a11 != 0), J_0 (a11 = 0)
/// The fixed line {z1=0} is invariant under P1 exactly when a10 = 0.
enum class LinearClassLabel { T_lambda, N_1, N_0, star_1_lambda, J_1, star_1_1, star_2, J_0 };

std::string to_string(LinearClassLabel label);

struct LinearClass {
    LinearClassLabel label = LinearClassLabel::star_1_lambda;
    /// -det/tr^2 for T_lambda; the residual index a11/a20 for star_1_lambda.
    std::optional<GaussQ> lambda;
    bool preserves_fixed_line = false; // the (H4) flag: a10 = 0
};

/// Invertible lower-triangular change of coordinates; the zero upper-right
/// entry keeps the line {z1=0} invariant.
struct LinearChange {
    GaussQ a11{1}, a21{0}, a22{1};

    GaussQ det() const { return a11 * a22; }
    LinearChange inverse() const;
    JetMap as_jet(int truncation) const;

    friend bool operator==(const LinearChange&, const LinearChange&) = default;
};

/// Classify the degree-1 part of the reduced map. Throws std::invalid_argument
/// when it vanishes (pure order 1 is required).
LinearClass classify_linear(const HomPair& p1, int contact_order);

/// Reduced map conjugated by A: alpha11^nu * A^{-1} o reduced o A, computed
/// exactly on the whole jet. Contact and pure order are unchanged.
GermDecomposition conjugate_germ_linear(const GermDecomposition& germ, const LinearChange& change);

struct LinearNormalization {
    LinearChange change;
    GermDecomposition germ;      // conjugated germ, degree-1 part in template form
    LinearClass cls;
    /// Diagonal factor left on the template: the degree-1 part equals
    /// diag(scale1, scale2) * template. Both are 1 unless permissive mode
    /// skipped an unsolvable root equation.
    GaussQ scale1{1}, scale2{1};
    std::optional<std::string> unmet_root_equation;

    bool fully_scaled() const { return scale1.is_one() && scale2.is_one(); }
};

/// Build the linear change realizing the class template (pure order 1 only).
/// When a scaling constraint needs a root missing from Q(i), throws
/// root_not_in_field, or, in permissive mode, returns the template up to the
/// reported diagonal factor.
LinearNormalization normalize_linear(const GermDecomposition& germ, bool permissive);

/// The template matrix of a class as a degree-1 homogeneous pair.
HomPair linear_template(LinearClassLabel label, const GaussQ& lambda);

} // namespace germnf
