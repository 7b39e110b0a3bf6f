#include <catch2/catch_amalgamated.hpp>

#include "sep/config.hpp"
#include "sep/enumeration.hpp"
#include "support/brute.hpp"

using sep::Config;

TEST_CASE("config bit operations") {
    Config c = Config::from_vertices({0, 2, 5});
    CHECK(c.bits == 0b100101u);
    CHECK(c.count() == 3);
    CHECK(c.test(0));
    CHECK_FALSE(c.test(1));
    CHECK(c.test(5));
    CHECK(c.with(1).bits == 0b100111u);
    CHECK(c.without(2).bits == 0b100001u);
    CHECK(c.with(0).bits == c.bits);       // idempotent
    CHECK(c.without(1).bits == c.bits);
    CHECK(c.vertices() == std::vector<int>{0, 2, 5});
}

TEST_CASE("swap_states exchanges two sites and is an involution") {
    Config c = Config::from_vertices({0, 2});
    Config s = sep::swap_states(c, 0, 1);
    CHECK(s.vertices() == std::vector<int>{1, 2});
    CHECK(sep::swap_states(s, 0, 1).bits == c.bits);

    // swapping two occupied or two empty sites changes nothing
    CHECK(sep::swap_states(c, 0, 2).bits == c.bits);
    CHECK(sep::swap_states(c, 1, 3).bits == c.bits);
    CHECK(sep::swap_states(c, 4, 4).bits == c.bits);

    CHECK_THROWS_AS(sep::swap_states(c, -1, 0), std::out_of_range);
    CHECK_THROWS_AS(sep::swap_states(c, 0, 64), std::out_of_range);
}

TEST_CASE("binomial table matches Pascal recursion") {
    CHECK(sep::binomial(0, 0) == 1);
    CHECK(sep::binomial(4, 2) == 6);
    CHECK(sep::binomial(25, 12) == 5200300ULL);
    CHECK(sep::binomial(64, 32) == 1832624140942590534ULL);
    CHECK(sep::binomial(3, 5) == 0);

    for (int n = 1; n <= 64; ++n)
        for (int k = 1; k < n; ++k)
            REQUIRE(sep::binomial(n, k) == sep::binomial(n - 1, k - 1) + sep::binomial(n - 1, k));
}

TEST_CASE("class_rank is the position in canonical order") {
    for (int n : {1, 4, 6, 10}) {
        for (int k = 0; k <= n; ++k) {
            std::uint64_t expect = 0;
            for (Config c : sep::enumerate_class(n, k)) {
                REQUIRE(sep::class_rank(c) == expect);
                ++expect;
            }
            REQUIRE(expect == sep::binomial(n, k));
        }
    }
}
