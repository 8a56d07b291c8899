#include <catch2/catch_amalgamated.hpp>

#include "fairsack/rational_die.hpp"

using namespace fairsack;

namespace {

Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

RationalDie uniform_support(std::vector<Exponent> support, Exponent n) {
    std::vector<Rational> probs(static_cast<std::size_t>(n) + 1, Rational(0));
    for (Exponent e : support)
        probs[static_cast<std::size_t>(e)] = q(1, static_cast<long>(support.size()));
    return RationalDie(std::move(probs));
}

} // namespace

TEST_CASE("die validation") {
    CHECK_THROWS_AS(RationalDie({}), std::invalid_argument);
    CHECK_THROWS_AS(RationalDie({q(1, 2), q(1, 4)}), std::invalid_argument); // sum != 1
    CHECK_THROWS_AS(RationalDie({q(3, 2), q(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(RationalDie({Rational(1), Rational(0)}), std::invalid_argument); // dead top side
    CHECK_NOTHROW(RationalDie({Rational(1)}));
    CHECK_NOTHROW(RationalDie({q(1, 2), q(1, 2)}));
}

TEST_CASE("support and max side") {
    RationalDie d({q(1, 3), Rational(0), q(1, 3), Rational(0), q(1, 3)});
    CHECK(d.max_side() == 4);
    CHECK(d.support() == std::vector<Exponent>({0, 2, 4}));
    CHECK(d.probability(2) == q(1, 3));
}

TEST_CASE("semifair dice") {
    CHECK(is_semifair(uniform_support({0, 2, 4}, 4)).semifair);
    CHECK(is_semifair(uniform_support({0, 2, 3, 5}, 5)).semifair);
    CHECK(is_semifair(RationalDie({Rational(1)})).semifair);

    // support not symmetric
    auto v1 = is_semifair(uniform_support({0, 1, 4}, 4));
    CHECK_FALSE(v1.semifair);
    REQUIRE(v1.witness.has_value());
    auto [x1, y1] = *v1.witness;
    CHECK(x1 + y1 == 4); // a mirror pair, one possible and one not

    // symmetric support, unequal values
    auto v2 = is_semifair(RationalDie({q(1, 2), Rational(0), q(1, 4), Rational(0), q(1, 4)}));
    CHECK_FALSE(v2.semifair);
    REQUIRE(v2.witness.has_value());

    // fair die is semifair
    CHECK(is_semifair(uniform_support({0, 1, 2, 3}, 3)).semifair);
}

TEST_CASE("normalize") {
    CHECK(normalize(uniform_support({0, 2, 4}, 4)) == SupportPoly({0, 2, 4}));
    CHECK(normalize(RationalDie({Rational(1)})) == SupportPoly{0});
    CHECK_THROWS_AS(normalize(uniform_support({0, 1, 4}, 4)), NotSemifairError);
    CHECK_THROWS_AS(normalize(RationalDie({q(1, 2), Rational(0), q(1, 4), Rational(0), q(1, 4)})),
                    NotSemifairError);
}

TEST_CASE("denormalize") {
    RationalDie d = denormalize(SupportPoly({0, 2, 4}));
    CHECK(d.max_side() == 4);
    CHECK(d.probability(0) == q(1, 3));
    CHECK(d.probability(1) == 0);
    CHECK(denormalize(SupportPoly{0}).probabilities() == std::vector<Rational>{Rational(1)});
    CHECK_THROWS_AS(denormalize(SupportPoly({1, 2})), InvalidSupportError);
    CHECK_THROWS_AS(denormalize(SupportPoly{}), InvalidSupportError);
}

TEST_CASE("normalize and denormalize invert each other") {
    std::vector<SupportPoly> supports = {
        SupportPoly{0},
        SupportPoly({0, 1}),
        SupportPoly({0, 2, 3, 5}),
        SupportPoly({0, 1, 2, 3, 4, 5}),
        SupportPoly({0, 4, 8}),
    };
    for (const auto& s : supports) {
        CHECK(normalize(denormalize(s)) == s);
    }
    RationalDie d = uniform_support({0, 3, 6, 9}, 9);
    CHECK(denormalize(normalize(d)) == d);
}
