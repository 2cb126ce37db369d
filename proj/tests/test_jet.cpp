#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germnf/errors.hpp"
#include "germnf/jet.hpp"
#include "test_util.hpp"

using namespace germnf;

namespace {

JetMap make_jet(int trunc, std::initializer_list<std::tuple<int, int, int, GaussQ>> terms) {
    JetMap j(trunc);
    for (const auto& [comp, e1, e2, c] : terms) j.set_coeff(comp, e1, e2, c);
    return j;
}

} // namespace

TEST_CASE("composition matches hand expansion") {
    SUBCASE("identity is neutral") {
        testutil::Rng rng(3);
        for (int k = 0; k < 10; ++k) {
            JetMap g = testutil::random_jet(rng, 5);
            JetMap id = JetMap::identity(5);
            CHECK(jet_compose(id, g, 5) == g);
            CHECK(jet_compose(g, id, 5) == g);
        }
    }
    SUBCASE("substitution example") {
        JetMap f = make_jet(3, {{0, 1, 0, GaussQ(1)}, {0, 2, 0, GaussQ(1)}, {1, 0, 1, GaussQ(1)}});
        JetMap g = make_jet(3, {{0, 1, 0, GaussQ(1)}, {1, 0, 1, GaussQ(1)}, {1, 1, 1, GaussQ(1)}});
        JetMap expected =
            make_jet(3, {{0, 1, 0, GaussQ(1)}, {0, 2, 0, GaussQ(1)}, {1, 0, 1, GaussQ(1)},
                         {1, 1, 1, GaussQ(1)}});
        CHECK(jet_compose(f, g, 3) == expected);
    }
    SUBCASE("binomial expansion") {
        JetMap f = make_jet(2, {{0, 2, 0, GaussQ(1)}});
        JetMap g = make_jet(2, {{0, 1, 0, GaussQ(1)}, {0, 0, 1, GaussQ(1)}});
        JetMap out = jet_compose(f, g, 2);
        CHECK(out.coeff(0, 2, 0) == GaussQ(1));
        CHECK(out.coeff(0, 1, 1) == GaussQ(2));
        CHECK(out.coeff(0, 0, 2) == GaussQ(1));
        CHECK(out.component(1).empty());
    }
    SUBCASE("constant term rejected") {
        JetMap f = JetMap::identity(3);
        JetMap g = make_jet(3, {{0, 0, 0, GaussQ(1)}});
        CHECK_THROWS_AS(jet_compose(f, g, 3), std::invalid_argument);
    }
}

TEST_CASE("composition is associative") {
    testutil::Rng rng(17);
    for (int k = 0; k < 60; ++k) {
        int trunc = 3 + static_cast<int>(rng() % 6); // up to 8
        JetMap f = testutil::random_jet(rng, trunc);
        JetMap g = testutil::random_jet(rng, trunc);
        JetMap h = testutil::random_jet(rng, trunc);
        CHECK(jet_compose(jet_compose(f, g, trunc), h, trunc) ==
              jet_compose(f, jet_compose(g, h, trunc), trunc));
    }
}

TEST_CASE("inversion of tangent-to-identity changes") {
    SUBCASE("identity") {
        CHECK(jet_invert(JetMap::identity(4), 4) == JetMap::identity(4));
    }
    SUBCASE("hand example") {
        JetMap chi = make_jet(3, {{0, 1, 0, GaussQ(1)}, {0, 1, 1, GaussQ(1)}, {1, 0, 1, GaussQ(1)}});
        JetMap inv = jet_invert(chi, 3);
        JetMap expected = make_jet(
            3, {{0, 1, 0, GaussQ(1)}, {0, 1, 1, GaussQ(-1)}, {0, 1, 2, GaussQ(1)}, {1, 0, 1, GaussQ(1)}});
        CHECK(inv == expected);
    }
    SUBCASE("two-sided inverse and leading-part negation") {
        testutil::Rng rng(23);
        for (int k = 0; k < 25; ++k) {
            int trunc = 4 + static_cast<int>(rng() % 5);
            JetMap id = JetMap::identity(trunc);
            JetMap chi = testutil::random_tangent_change(rng, trunc);
            JetMap inv = jet_invert(chi, trunc);
            CHECK(jet_compose(chi, inv, trunc) == id);
            CHECK(jet_compose(inv, chi, trunc) == id);

            JetMap fwd = chi - id, bwd = inv - id;
            if (!fwd.is_zero()) {
                int low = fwd.lowest_degree();
                CHECK(bwd.lowest_degree() == low);
                CHECK(bwd.part(low) == -fwd.part(low));
            }
        }
    }
    SUBCASE("non-tangent input rejected") {
        JetMap bad = make_jet(3, {{0, 1, 0, GaussQ(2)}, {1, 0, 1, GaussQ(1)}});
        CHECK_THROWS_AS(jet_invert(bad, 3), std::invalid_argument);
    }
}

TEST_CASE("jacobian application") {
    SUBCASE("identity jacobian") {
        testutil::Rng rng(29);
        for (int k = 0; k < 10; ++k) {
            JetMap v = testutil::random_jet(rng, 5);
            CHECK(jacobian_apply(JetMap::identity(5), v) == v);
        }
    }
    SUBCASE("hand example") {
        JetMap h = make_jet(4, {{0, 1, 1, GaussQ(1)}});
        GaussQ lambda = GaussQ::i();
        JetMap v = make_jet(4, {{0, 1, 0, lambda}, {1, 0, 1, GaussQ(1)}});
        JetMap out = jacobian_apply(h, v);
        CHECK(out.coeff(0, 1, 1) == lambda + GaussQ(1));
        CHECK(out.component(1).empty());
    }
    SUBCASE("linear chain rule: Jac(A) B = AB") {
        testutil::Rng rng(31);
        for (int k = 0; k < 20; ++k) {
            GaussQ a11 = testutil::random_gauss(rng), a12 = testutil::random_gauss(rng);
            GaussQ a21 = testutil::random_gauss(rng), a22 = testutil::random_gauss(rng);
            GaussQ b11 = testutil::random_gauss(rng), b12 = testutil::random_gauss(rng);
            GaussQ b21 = testutil::random_gauss(rng), b22 = testutil::random_gauss(rng);
            JetMap A = make_jet(3, {{0, 1, 0, a11}, {0, 0, 1, a12}, {1, 1, 0, a21}, {1, 0, 1, a22}});
            JetMap B = make_jet(3, {{0, 1, 0, b11}, {0, 0, 1, b12}, {1, 1, 0, b21}, {1, 0, 1, b22}});
            JetMap out = jacobian_apply(A, B);
            CHECK(out.coeff(0, 1, 0) == a11 * b11 + a12 * b21);
            CHECK(out.coeff(0, 0, 1) == a11 * b12 + a12 * b22);
            CHECK(out.coeff(1, 1, 0) == a21 * b11 + a22 * b21);
            CHECK(out.coeff(1, 0, 1) == a21 * b12 + a22 * b22);
        }
    }
}

TEST_CASE("germ decomposition") {
    SUBCASE("contact order from the z1-adic valuation") {
        JetMap f = JetMap::identity(5);
        f.add_coeff(0, 3, 0, GaussQ::i()); // i z1^3
        f.add_coeff(1, 2, 1, GaussQ(1));   // z1^2 z2
        GermDecomposition germ = decompose_germ(f);
        CHECK(germ.contact_order == 2);
        CHECK(germ.pure_order == 1);
        CHECK(germ.reduced.coeff(0, 1, 0) == GaussQ::i());
        CHECK(germ.reduced.coeff(1, 0, 1) == GaussQ(1));
        CHECK(germ.reduced.truncation() == 3);
        CHECK(reassemble_germ(germ) == f);
    }
    SUBCASE("pure order above one") {
        JetMap f = JetMap::identity(5);
        f.add_coeff(0, 1, 2, GaussQ(1)); // z1 z2^2
        GermDecomposition germ = decompose_germ(f);
        CHECK(germ.contact_order == 1);
        CHECK(germ.pure_order == 2);
        CHECK(germ.reduced.coeff(0, 0, 2) == GaussQ(1));
        CHECK(reassemble_germ(germ) == f);
    }
    SUBCASE("identity input is degenerate") {
        try {
            decompose_germ(JetMap::identity(4));
            CHECK(false);
        } catch (const hypothesis_error& e) {
            CHECK(e.which() == hypothesis_error::kind::degenerate);
        }
    }
    SUBCASE("fixed line violation") {
        JetMap f = JetMap::identity(4);
        f.add_coeff(0, 0, 2, GaussQ(1)); // z2^2 spoils divisibility by z1
        try {
            decompose_germ(f);
            CHECK(false);
        } catch (const hypothesis_error& e) {
            CHECK(e.which() == hypothesis_error::kind::fixed_line);
        }
    }
    SUBCASE("singular origin violation") {
        JetMap f = JetMap::identity(4);
        f.add_coeff(0, 2, 0, GaussQ(1)); // f - id = (z1^2, 0): reduced map is constant
        try {
            decompose_germ(f);
            CHECK(false);
        } catch (const hypothesis_error& e) {
            CHECK(e.which() == hypothesis_error::kind::singular_origin);
        }
    }
    SUBCASE("non-tangent input") {
        JetMap f = JetMap::identity(4);
        f.add_coeff(0, 1, 0, GaussQ(2)); // linear part 3 z1
        try {
            decompose_germ(f);
            CHECK(false);
        } catch (const hypothesis_error& e) {
            CHECK(e.which() == hypothesis_error::kind::not_tangent);
        }
    }
    SUBCASE("roundtrip on random germs") {
        testutil::Rng rng(37);
        for (int k = 0; k < 20; ++k) {
            int trunc = 5 + static_cast<int>(rng() % 4);
            int nu = 1 + static_cast<int>(rng() % 3);
            JetMap reduced(trunc - nu);
            for (int d = 1; d <= trunc - nu; ++d)
                reduced.add_part(testutil::random_hom_pair(rng, d, 40));
            reduced.set_coeff(0, 0, 0, GaussQ(0));
            reduced.set_coeff(1, 0, 0, GaussQ(0));
            // pin a z1-free term so the chosen contact order is maximal
            reduced.set_coeff(0, 0, 1, GaussQ(1));
            JetMap f = JetMap::identity(trunc);
            f += reduced.shifted_up(nu).with_truncation(trunc);
            GermDecomposition germ = decompose_germ(f);
            CHECK(germ.contact_order == nu);
            CHECK(germ.reduced == reduced);
            CHECK(reassemble_germ(germ) == f);
        }
    }
}

TEST_CASE("homogeneous decomposition reassembles bit-identically") {
    testutil::Rng rng(41);
    for (int k = 0; k < 20; ++k) {
        int trunc = 3 + static_cast<int>(rng() % 6);
        JetMap j = testutil::random_jet(rng, trunc);
        JetMap sum(trunc);
        for (int d = 0; d <= trunc; ++d) sum.add_part(j.part(d));
        CHECK(sum == j);
    }
}
