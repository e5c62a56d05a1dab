#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chromatic/grading.hpp"
#include "test_support.hpp"

using namespace chromatic;
using chromatic::testing::brute_monomials;

namespace {

ExponentConstraint all_free(int n)
{
    ExponentConstraint c;
    c.ranges.resize(n);
    return c;
}

}  // namespace

TEST_CASE("generator degrees follow 2(p^i - 1)")
{
    auto r2 = make_ring(2, 3);
    CHECK(generator_degree(r2, 0) == 0);
    CHECK(generator_degree(r2, 1) == 2);
    CHECK(generator_degree(r2, 2) == 6);
    CHECK(generator_degree(r2, 3) == 14);

    auto r3 = make_ring(3, 2);
    CHECK(generator_degree(r3, 1) == 4);
    CHECK(generator_degree(r3, 2) == 16);

    CHECK_THROWS_AS(generator_degree(r2, 4), std::out_of_range);
    CHECK_THROWS_AS(generator_degree(r2, -1), std::out_of_range);
}

TEST_CASE("generator degrees are even and strictly increasing")
{
    for (int64_t p : {2, 3, 5}) {
        auto ring = make_ring(p, 6);
        int64_t prev = 0;
        for (int i = 1; i <= 6; ++i) {
            int64_t d = generator_degree(ring, i);
            CHECK(d % 2 == 0);
            CHECK(d > prev);
            prev = d;
        }
    }
}

TEST_CASE("ring construction validates inputs")
{
    CHECK_THROWS_AS(make_ring(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_ring(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_ring(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(make_ideal(make_ring(2, 2), 3), TruncationExceeded);
    CHECK_THROWS_AS(make_ideal(make_ring(2, 2), -1), std::invalid_argument);
}

TEST_CASE("degree-6 monomials over Z_(2)[v1,v2] are v1^3 and v2")
{
    auto ring = make_ring(2, 2);
    auto c = all_free(2);
    auto expected = brute_monomials(ring, c, 6, 4);
    auto got = monomials_of_degree(ring, c, 6);
    CHECK(got == expected);
    REQUIRE(got.size() == 2);
    CHECK(got[0] == Monomial{0, 1});
    CHECK(got[1] == Monomial{3, 0});
}

TEST_CASE("degree zero has only the empty monomial")
{
    for (int64_t p : {2, 3}) {
        auto ring = make_ring(p, 3);
        auto got = monomials_of_degree(ring, all_free(3), 0);
        REQUIRE(got.size() == 1);
        CHECK(got[0] == Monomial{0, 0, 0});
    }
    auto trivial = make_ring(2, 0);
    CHECK(monomials_of_degree(trivial, ExponentConstraint{}, 0).size() == 1);
    CHECK(monomials_of_degree(trivial, ExponentConstraint{}, 2).empty());
}

TEST_CASE("opposite unbounded directions are rejected")
{
    using Kind = ExponentConstraint::Range::Kind;
    auto ring = make_ring(2, 2);
    ExponentConstraint c = all_free(2);
    c.ranges[0].kind = Kind::strictly_negative;
    CHECK_FALSE(degreewise_finite(ring, c));
    CHECK_THROWS_AS(monomials_of_degree(ring, c, 0), NonFiniteDegreewise);

    // The witness family: v1^{-3a} v2^a has degree 0 for every a >= 1.
    auto in_box = brute_monomials(ring, c, 0, 6);
    auto in_bigger_box = brute_monomials(ring, c, 0, 12);
    CHECK(in_bigger_box.size() > in_box.size());
}

TEST_CASE("a single two-sided direction stays finite")
{
    using Kind = ExponentConstraint::Range::Kind;
    auto ring = make_ring(2, 2);
    ExponentConstraint c;
    c.ranges.resize(2);
    c.ranges[0] = {Kind::nonnegative, 1};  // pinned to zero
    c.ranges[1] = {Kind::all_integers, {}};
    CHECK(degreewise_finite(ring, c));
    auto got = monomials_of_degree(ring, c, -12);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == Monomial{0, -2});
    CHECK(monomials_of_degree(ring, c, -3).empty());
}

TEST_CASE("strictly negative directions enumerate against the bounded tail")
{
    using Kind = ExponentConstraint::Range::Kind;
    auto ring = make_ring(2, 2);
    ExponentConstraint c;
    c.ranges.resize(2);
    c.ranges[0] = {Kind::strictly_negative, {}};
    c.ranges[1] = {Kind::strictly_negative, {}};
    for (int64_t d : {-8, -10, -14, -26, -3}) {
        CHECK(monomials_of_degree(ring, c, d) == brute_monomials(ring, c, d, 16));
    }
    CHECK(monomials_of_degree(ring, c, -8) == std::vector<Monomial>{{-1, -1}});
}

TEST_CASE("random constraints agree with the bounded search")
{
    using Kind = ExponentConstraint::Range::Kind;
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        auto ring = make_ring(rng() % 2 == 0 ? 2 : 3, 1 + rng() % 3);
        ExponentConstraint c;
        c.ranges.resize(ring.truncation);
        for (auto& range : c.ranges) {
            switch (rng() % 4) {
                case 0:
                    range = {Kind::nonnegative, {}};
                    break;
                case 1:
                    range = {Kind::nonnegative, 1 + static_cast<int>(rng() % 4)};
                    break;
                case 2:
                    range = {Kind::strictly_negative, {}};
                    break;
                case 3:
                    range = {Kind::all_integers, {}};
                    break;
            }
        }
        int64_t d = static_cast<int64_t>(rng() % 41) - 20;
        if (!degreewise_finite(ring, c)) {
            CHECK_THROWS_AS(monomials_of_degree(ring, c, d), NonFiniteDegreewise);
            continue;
        }
        // Box size dominates every derived bound at these weights.
        CHECK(monomials_of_degree(ring, c, d) == brute_monomials(ring, c, d, 24));
    }
}
