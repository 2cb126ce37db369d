#pragma once

#include <vector>

#include "germnf/jet.hpp"

namespace germnf {

/// Matrix of the degree-d stage operator
///   H  |->  Jac(P).H - Jac(H).P + nu * (H_1/z1) * P
/// on the monomial bases: columns indexed by the basis v^1..v^(2d+1) of the
/// constrained space at degree d, rows by the full basis v^0..v^(2(d+mu-1)+1)
/// at degree d+mu-1. When P has no (z2^mu, 0) term the v^0 row vanishes
/// identically: the image stays inside the constrained space.
class OperatorMatrix {
public:
    OperatorMatrix(int contact_order, int pure_order, int stage_degree);

    int contact_order() const noexcept { return nu_; }
    int pure_order() const noexcept { return mu_; }
    int stage_degree() const noexcept { return d_; }

    int rows() const noexcept { return 2 * (d_ + mu_ - 1) + 2; }
    int cols() const noexcept { return 2 * d_ + 1; }

    /// Row r is the ambient basis index; column c corresponds to v^(c+1).
    const GaussQ& at(int r, int c) const;
    GaussQ& at(int r, int c);

    HomPair apply(const HomPair& h) const;
    HomPair column(int c) const;

private:
    int nu_, mu_, d_;
    std::vector<GaussQ> entries_; // row-major
};

/// The stage operator evaluated from its definition by exact polynomial
/// arithmetic; the independent oracle for operator_matrix. The argument must
/// lie in the constrained space (first component divisible by z1).
HomPair operator_apply(const HomPair& p, int contact_order, const HomPair& h);

/// The operator matrix assembled from the closed-form action on basis
/// monomials.
OperatorMatrix operator_matrix(const HomPair& p, int contact_order, int stage_degree);

struct StageSolution {
    HomPair solution;  // in the constrained space at the stage degree
    HomPair residual;  // supported on the complement indices only
    StageSolution(int d, int target_degree) : solution(d), residual(target_degree) {}
};

/// Decompose target = M.solution + residual with the residual supported on
/// `complement` (ambient basis indices). The complement must span a complement
/// of the column space; this is validated, and failure throws internal_error.
/// Free columns are pinned to zero by forward elimination in basis order, so
/// the result is deterministic.
StageSolution solve_stage(const HomPair& target, const OperatorMatrix& m,
                          const std::vector<int>& complement);

/// Deterministic complement of the column space: the ambient indices that are
/// not leading rows of the column echelon basis (columns processed in basis
/// order, leading entry = first nonzero row).
std::vector<int> greedy_complement(const OperatorMatrix& m);

} // namespace germnf
