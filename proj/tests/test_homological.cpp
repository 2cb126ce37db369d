#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germnf/errors.hpp"
#include "germnf/homological.hpp"
#include "germnf/linear.hpp"
#include "test_util.hpp"

using namespace germnf;

namespace {

HomPair basis_vector(int d, int index) {
    HomPair v(d);
    v[index] = GaussQ(1);
    return v;
}

const std::vector<LinearClassLabel> kFixedLineClasses = {
    LinearClassLabel::star_1_lambda, LinearClassLabel::J_1, LinearClassLabel::star_1_1,
    LinearClassLabel::star_2, LinearClassLabel::J_0};

void check_matrix_matches_definition(const HomPair& p, int nu, int d) {
    OperatorMatrix m = operator_matrix(p, nu, d);
    for (int c = 0; c < m.cols(); ++c) {
        HomPair from_formula = m.column(c);
        HomPair from_definition = operator_apply(p, nu, basis_vector(d, c + 1));
        CHECK(from_formula == from_definition);
    }
}

} // namespace

TEST_CASE("operator definition on worked examples") {
    GaussQ i = GaussQ::i();
    HomPair p = linear_template(LinearClassLabel::star_1_lambda, i); // (i z1, z2)

    HomPair h = basis_vector(2, 1); // (z1 z2, 0)
    HomPair out = operator_apply(p, 1, h);
    HomPair expected = basis_vector(2, 1).scaled(i - GaussQ(1));
    expected += basis_vector(2, 3);
    CHECK(out == expected);

    HomPair h2 = basis_vector(2, 3); // (0, z2^2)
    CHECK(operator_apply(p, 1, h2) == -basis_vector(2, 3));

    CHECK(operator_apply(p, 1, HomPair(2)).is_zero());

    HomPair bad = basis_vector(2, 0); // (z2^2, 0) is outside V_2
    CHECK_THROWS_AS(operator_apply(p, 1, bad), std::invalid_argument);
}

TEST_CASE("operator is linear") {
    testutil::Rng rng(59);
    for (int k = 0; k < 30; ++k) {
        int mu = 1 + static_cast<int>(rng() % 3);
        int nu = 1 + static_cast<int>(rng() % 3);
        int d = 2 + static_cast<int>(rng() % 5);
        HomPair p = testutil::random_nonzero_hom_pair(rng, mu);
        HomPair h = testutil::random_constrained_pair(rng, d);
        HomPair g = testutil::random_constrained_pair(rng, d);
        GaussQ a = testutil::random_gauss(rng), b = testutil::random_gauss(rng);
        HomPair combo = h.scaled(a);
        combo += g.scaled(b);
        HomPair lhs = operator_apply(p, nu, combo);
        HomPair rhs = operator_apply(p, nu, h).scaled(a);
        rhs += operator_apply(p, nu, g).scaled(b);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("matrix columns equal the definition on every template") {
    for (LinearClassLabel label : kFixedLineClasses) {
        HomPair p = linear_template(label, GaussQ(Rational(2, 3)));
        for (int nu : {1, 2, 3})
            for (int d = 2; d <= 8; ++d) check_matrix_matches_definition(p, nu, d);
    }
}

TEST_CASE("matrix columns equal the definition on random homogeneous pairs") {
    testutil::Rng rng(61);
    for (int k = 0; k < 20; ++k) {
        int mu = 1 + static_cast<int>(rng() % 3);
        HomPair p = testutil::random_nonzero_hom_pair(rng, mu);
        for (int nu : {1, 2, 3})
            for (int d = 2; d <= 6; ++d) check_matrix_matches_definition(p, nu, d);
    }
}

TEST_CASE("residual-index template has the sigma/tau structure") {
    GaussQ lambda(Rational(5, 7));
    HomPair p = linear_template(LinearClassLabel::star_1_lambda, lambda);
    for (int nu : {1, 2, 3}) {
        for (int d = 2; d <= 6; ++d) {
            OperatorMatrix m = operator_matrix(p, nu, d);
            for (int h = 1; h <= d; ++h) {
                GaussQ sigma = GaussQ(nu + 1 - h) * lambda - GaussQ(d - h);
                int col = h - 1;
                CHECK(m.at(h, col) == sigma);
                CHECK(m.at(h + d, col) == GaussQ(nu));
                int nonzero = 0;
                for (int r = 0; r < m.rows(); ++r)
                    if (!m.at(r, col).is_zero()) ++nonzero;
                CHECK(nonzero == (sigma.is_zero() ? 1 : 2));
            }
            for (int k = 0; k <= d; ++k) {
                GaussQ tau = GaussQ(k + 1 - d) - GaussQ(k) * lambda;
                int col = d + k;
                CHECK(m.at(k + 1 + d, col) == tau);
                int nonzero = 0;
                for (int r = 0; r < m.rows(); ++r)
                    if (!m.at(r, col).is_zero()) ++nonzero;
                CHECK(nonzero == (tau.is_zero() ? 0 : 1));
            }
        }
    }
}

TEST_CASE("degenerate-diagonal templates") {
    SUBCASE("pure z1 template is diagonal") {
        HomPair p = linear_template(LinearClassLabel::star_2, GaussQ(1));
        for (int nu : {1, 2}) {
            for (int d = 2; d <= 6; ++d) {
                OperatorMatrix m = operator_matrix(p, nu, d);
                for (int h = 1; h <= d; ++h) CHECK(m.at(h, h - 1) == GaussQ(nu + 1 - h));
                for (int k = 0; k <= d; ++k) CHECK(m.at(k + d + 1, d + k) == GaussQ(-k));
                // square part in the constrained basis is diagonal
                for (int r = 1; r <= 2 * d + 1; ++r)
                    for (int c = 0; c < m.cols(); ++c)
                        if (r - 1 != c) CHECK(m.at(r, c).is_zero());
            }
        }
    }
    SUBCASE("nilpotent template is strictly lower triangular") {
        HomPair p = linear_template(LinearClassLabel::J_0, GaussQ(0));
        for (int nu : {1, 2}) {
            for (int d = 2; d <= 6; ++d) {
                OperatorMatrix m = operator_matrix(p, nu, d);
                for (int h = 1; h <= d; ++h) {
                    CHECK(m.at(h + 1, h - 1) == GaussQ(-(d - h)));
                    CHECK(m.at(h + d + 1, h - 1) == GaussQ(nu + 1));
                }
                for (int k = 0; k < d; ++k)
                    CHECK(m.at(k + d + 2, d + k) == GaussQ(-(d - k)));
                for (int r = 0; r < m.rows(); ++r)
                    CHECK(m.at(r, 2 * d).is_zero()); // v^(2d+1) is in the kernel
                for (int r = 1; r <= 2 * d + 1; ++r)
                    for (int c = r - 1; c < m.cols(); ++c)
                        CHECK(m.at(r, c).is_zero());
            }
        }
    }
    SUBCASE("lower triangular classes") {
        for (LinearClassLabel label :
             {LinearClassLabel::star_1_lambda, LinearClassLabel::J_1}) {
            HomPair p = linear_template(label, GaussQ(Rational(3, 4)));
            for (int nu : {1, 2, 3}) {
                for (int d = 2; d <= 8; ++d) {
                    OperatorMatrix m = operator_matrix(p, nu, d);
                    for (int r = 1; r <= 2 * d + 1; ++r)
                        for (int c = r; c < m.cols(); ++c)
                            CHECK(m.at(r, c).is_zero());
                }
            }
        }
    }
}

TEST_CASE("fixed-line leading part keeps the image constrained") {
    testutil::Rng rng(67);
    for (int k = 0; k < 20; ++k) {
        int mu = 1 + static_cast<int>(rng() % 3);
        HomPair p = testutil::random_nonzero_hom_pair(rng, mu);
        p[0] = GaussQ(0); // no (z2^mu, 0) term
        for (int nu : {1, 2})
            for (int d = 2; d <= 6; ++d) {
                OperatorMatrix m = operator_matrix(p, nu, d);
                for (int c = 0; c < m.cols(); ++c) CHECK(m.at(0, c).is_zero());
            }
    }
}

TEST_CASE("stage solving") {
    SUBCASE("worked residual-index example") {
        GaussQ i = GaussQ::i();
        HomPair p = linear_template(LinearClassLabel::star_1_lambda, i);
        OperatorMatrix m = operator_matrix(p, 1, 2);
        HomPair target = basis_vector(2, 1);
        StageSolution sol = solve_stage(target, m, {0, 2});
        GaussQ c = GaussQ(Rational(-1, 2), Rational(-1, 2)); // -(1+i)/2
        HomPair expected = basis_vector(2, 1).scaled(c);
        expected += basis_vector(2, 3).scaled(c);
        CHECK(sol.solution == expected);
        CHECK(sol.residual.is_zero());
        CHECK(operator_apply(p, 1, sol.solution) == target);
    }
    SUBCASE("unremovable monomial stays in the residual") {
        GaussQ lambda = GaussQ::i(); // outside E
        HomPair p = linear_template(LinearClassLabel::star_1_lambda, lambda);
        for (int nu : {1, 2}) {
            int d = nu + 1;
            OperatorMatrix m = operator_matrix(p, nu, d);
            HomPair target = basis_vector(d, nu + 1); // (z1^(nu+1), 0)
            StageSolution sol = solve_stage(target, m, {0, nu + 1});
            CHECK(sol.solution.is_zero());
            CHECK(sol.residual == target);
        }
    }
    SUBCASE("solvable targets leave no residual") {
        testutil::Rng rng(71);
        GaussQ lambda = GaussQ::i();
        HomPair p = linear_template(LinearClassLabel::star_1_lambda, lambda);
        for (int k = 0; k < 20; ++k) {
            int nu = 1 + static_cast<int>(rng() % 2);
            int d = 2 + static_cast<int>(rng() % 4);
            OperatorMatrix m = operator_matrix(p, nu, d);
            std::vector<int> complement{0};
            if (d == nu + 1) complement.push_back(nu + 1);
            HomPair target = testutil::random_hom_pair(rng, d);
            target[0] = GaussQ(0);
            if (d == nu + 1) target[nu + 1] = GaussQ(0);
            StageSolution sol = solve_stage(target, m, complement);
            CHECK(sol.residual.is_zero());
            CHECK(m.apply(sol.solution) == target);
        }
    }
    SUBCASE("invalid complement is rejected") {
        GaussQ lambda = GaussQ::i();
        HomPair p = linear_template(LinearClassLabel::star_1_lambda, lambda);
        OperatorMatrix away = operator_matrix(p, 1, 3); // surjective stage
        CHECK_THROWS_AS(solve_stage(basis_vector(3, 1), away, {0, 1}), internal_error);
        OperatorMatrix at = operator_matrix(p, 1, 2); // rank drops at d = nu+1
        CHECK_THROWS_AS(solve_stage(basis_vector(2, 1), at, {0}), internal_error);
    }
    SUBCASE("greedy complement always validates") {
        testutil::Rng rng(73);
        for (int k = 0; k < 20; ++k) {
            int mu = 1 + static_cast<int>(rng() % 3);
            int nu = 1 + static_cast<int>(rng() % 2);
            int d = 2 + static_cast<int>(rng() % 4);
            HomPair p = testutil::random_nonzero_hom_pair(rng, mu);
            OperatorMatrix m = operator_matrix(p, nu, d);
            std::vector<int> complement = greedy_complement(m);
            HomPair target = testutil::random_hom_pair(rng, d + mu - 1);
            StageSolution sol = solve_stage(target, m, complement);
            HomPair reach = m.apply(sol.solution);
            reach += sol.residual;
            CHECK(reach == target);
        }
    }
}
