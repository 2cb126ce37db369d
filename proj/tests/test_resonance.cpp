#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "germnf/resonance.hpp"
#include "test_util.hpp"

using namespace germnf;

namespace {

ResonanceWitness sigma(int d, int h) { return {ResonanceWitness::Kind::sigma, d, h}; }
ResonanceWitness tau(int d, int k) { return {ResonanceWitness::Kind::tau, d, k}; }

} // namespace

TEST_CASE("diagonal values") {
    // sigma_{nu+1,nu+1} vanishes for every residual index
    testutil::Rng rng(79);
    for (int k = 0; k < 100; ++k) {
        GaussQ lambda = testutil::random_gauss(rng, 6, 6);
        int nu = 1 + static_cast<int>(rng() % 4);
        CHECK(diagonal_value(lambda, nu, sigma(nu + 1, nu + 1)).is_zero());
    }

    // tau at k = 0 is 1 - d
    for (int d = 2; d <= 6; ++d)
        CHECK(diagonal_value(GaussQ::i(), 1, tau(d, 0)) == GaussQ(1 - d));

    CHECK(diagonal_value(GaussQ::i(), 1, sigma(2, 1)) == GaussQ::i() - GaussQ(1));

    CHECK_THROWS_AS(diagonal_value(GaussQ(1), 1, sigma(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(diagonal_value(GaussQ(1), 1, tau(2, 3)), std::invalid_argument);
}

TEST_CASE("closed-form membership") {
    auto m = in_exceptional_set(GaussQ(Rational(3, 2)), 2);
    CHECK(m.member);
    CHECK(m.component == EMembership::Component::positive_over_q);
    CHECK(m.p == 3);
    CHECK(m.q == 2);

    auto zero = in_exceptional_set(GaussQ(0), 3);
    CHECK(zero.member);
    CHECK(zero.component == EMembership::Component::zero);

    CHECK(!in_exceptional_set(GaussQ(Rational(2, 3)), 1).member);
    CHECK(!in_exceptional_set(GaussQ(Rational(1), Rational(1)), 2).member);

    auto one = in_exceptional_set(GaussQ(1), 1);
    CHECK(one.member);
    CHECK(one.component == EMembership::Component::positive_over_q);
    CHECK(one.q == 1);

    auto recip = in_exceptional_set(GaussQ(Rational(1, 5)), 1);
    CHECK(recip.member);
    CHECK(recip.component == EMembership::Component::reciprocal_integer);
    CHECK(recip.q == 5);

    // 1/q with q <= nu matches two components; the reciprocal one is reported
    auto both = in_exceptional_set(GaussQ(Rational(1, 2)), 3);
    CHECK(both.member);
    CHECK(both.component == EMembership::Component::reciprocal_integer);

    auto neg = in_exceptional_set(GaussQ(Rational(-7, 3)), 1);
    CHECK(neg.member);
    CHECK(neg.component == EMembership::Component::negative_rational);
    CHECK(neg.p == 7);
    CHECK(neg.q == 3);
}

TEST_CASE("witness scan examples") {
    SUBCASE("negative rational") {
        auto hits = witness_scan(GaussQ(Rational(-1, 2)), 1, 10);
        CHECK(std::count(hits.begin(), hits.end(), tau(4, 2)) == 1);
        CHECK(std::count(hits.begin(), hits.end(), tau(7, 4)) == 1);
        CHECK(std::count(hits.begin(), hits.end(), tau(10, 6)) == 1);
    }
    SUBCASE("non-real index sees no witnesses") {
        CHECK(witness_scan(GaussQ(Rational(1), Rational(1)), 1, 30).empty());
        CHECK(witness_scan(GaussQ(Rational(0), Rational(-2)), 3, 30).empty());
    }
    SUBCASE("index one concentrates at the contact degree") {
        auto hits = witness_scan(GaussQ(1), 2, 5);
        REQUIRE(hits.size() == 2);
        CHECK(hits[0] == sigma(3, 1));
        CHECK(hits[1] == sigma(3, 2));
    }
}

TEST_CASE("closed form agrees with the enumeration oracle") {
    for (long q = 1; q <= 12; ++q) {
        for (long p = -12; p <= 12; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            Rational lam(p, q);
            lam.canonicalize();
            for (int nu = 1; nu <= 4; ++nu) {
                int d_max = nu + 1 + static_cast<int>(q) * (static_cast<int>(std::abs(p)) + nu + 2);
                bool scanned = !witness_scan(GaussQ(lam), nu, d_max).empty();
                bool closed = in_exceptional_set(GaussQ(lam), nu).member;
                CAPTURE(p);
                CAPTURE(q);
                CAPTURE(nu);
                CHECK(scanned == closed);
            }
        }
    }
}
