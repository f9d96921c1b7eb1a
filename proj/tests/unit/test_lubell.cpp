#include <doctest.h>

#include "helpers.hpp"
#include "rainbow/lubell.hpp"
#include "rainbow/poset.hpp"

using namespace rainbow;

TEST_CASE("ratio text") {
    CHECK(to_string(ExactRatio(5, 6)) == "5/6");
    CHECK(to_string(ratio(4, 2)) == "2");
    CHECK(to_string(ratio(-6, 4)) == "-3/2");
    CHECK_THROWS(parse_ratio("1/0"));
    CHECK_THROWS(ratio(1, 0));
    CHECK(parse_ratio("10/4") == ExactRatio(5, 2));
}

TEST_CASE("lubell mass examples") {
    // 2/4 must come out as 1/2
    CHECK(lubell_mass(Family(4, {0b1, 0b10})) == ratio(1, 2));
    CHECK(to_string(lubell_mass(Family(4, {0b1, 0b10, 0b11}))) == "2/3");
    for (int n = 0; n <= 10; ++n) CHECK(lubell_mass(Family::all(n)) == n + 1);
    CHECK(lubell_mass(region(RegionSpec::level(3), 7)) == 1);
    CHECK(lubell_mass(Family(5, {0, 0b11111})) == 2);
}

TEST_CASE("subcube closed form") {
    CHECK(lubell_subcube(4, 1, 1) == ExactRatio(5, 6));
    for (int n = 0; n <= 12; ++n) {
        CHECK(lubell_subcube(n, 0, 0) == n + 1);
        for (int a = 0; a <= n; ++a) {
            CHECK(lubell_subcube(n, a, n - a) == ExactRatio(mpz_class(1), binomial(n, a)));
            for (int b = 0; a + b <= n; ++b) {
                ExactRatio direct = 0;
                for (int i = a; i <= n - b; ++i) direct += ratio(binomial(n - a - b, i - a), binomial(n, i));
                REQUIRE(lubell_subcube(n, a, b) == direct);
            }
        }
    }
    // same value as summing the materialised region
    const Family cube = region(RegionSpec::subcube(0b11, 0b111011), 7);
    CHECK(lubell_mass(cube) == lubell_subcube(7, 2, 2));
    CHECK_THROWS(lubell_subcube(4, 3, 2));
    CHECK_THROWS(lubell_subcube(4, -1, 0));
}

TEST_CASE("max-partition identity residual vanishes") {
    CHECK(maxpart_identity_residual(Family(5, {0b11111})) == 0);
    CHECK(maxpart_identity_residual(region(RegionSpec::level(2), 4)) == 0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 8;
        REQUIRE(maxpart_identity_residual(testutil::random_family(rng, n, 0.25)) == 0);
    }
    CHECK_THROWS(maxpart_identity_residual(Family(9, {0})));
}

TEST_CASE("chain-free families obey the k-LYM bound") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 6;
        const Family fam = testutil::random_family(rng, n, 0.15);
        for (int k = 1; k <= 3; ++k) {
            if (find_copy(fam, standard_poset(StandardPoset::Chain, k + 1), CopyMode::Weak)) continue;
            REQUIRE(lubell_mass(fam) <= k);
        }
    }
}
