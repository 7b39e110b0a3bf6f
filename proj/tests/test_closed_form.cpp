#include <catch2/catch_amalgamated.hpp>

#include "sep/closed_form.hpp"
#include "sep/occupancy.hpp"

using sep::Graph;
using sep::Rational;

TEST_CASE("star closed form: frozen values") {
    // N=3: center 1/2, 4/5, 1; leaf 1/4, 3/5, 1
    CHECK(sep::star_profile(3, 1).p == std::vector<Rational>{{1, 2}, {1, 4}, {1, 4}});
    CHECK(sep::star_profile(3, 2).p == std::vector<Rational>{{4, 5}, {3, 5}, {3, 5}});
    CHECK(sep::star_profile(3, 3).p == std::vector<Rational>(3, Rational(1)));

    // N=25, K=12
    auto p = sep::star_profile(25, 12);
    CHECK(p.p[0] == Rational(288, 301));
    CHECK(p.p[1] == Rational(277, 602));
    CHECK(p.p[0].to_double() == Catch::Approx(0.95681).margin(5e-6));
    CHECK(p.p[1].to_double() == Catch::Approx(0.46013).margin(5e-6));

    CHECK_THROWS(sep::star_profile(1, 1));
    CHECK_THROWS(sep::star_profile(5, 0));
    CHECK_THROWS(sep::star_profile(5, 6));
}

TEST_CASE("star leaf/center ratio is linear in K") {
    // N=3: 1/2, 3/4, 1
    CHECK(sep::star_leaf_center_ratio(3, 1) == Rational(1, 2));
    CHECK(sep::star_leaf_center_ratio(3, 2) == Rational(3, 4));
    CHECK(sep::star_leaf_center_ratio(3, 3) == Rational(1));

    // slope is constant: r_{K+1} - r_K = (N-2)/(N-1)^2
    for (int n : {4, 9, 25}) {
        Rational slope(n - 2, static_cast<long long>(n - 1) * (n - 1));
        for (int k = 1; k < n; ++k)
            REQUIRE(sep::star_leaf_center_ratio(n, k + 1) - sep::star_leaf_center_ratio(n, k) ==
                    slope);
        CHECK(sep::star_leaf_center_ratio(n, n) == Rational(1));
    }
}

TEST_CASE("path closed form: frozen values") {
    CHECK(sep::path_profile(3, 1).p == std::vector<Rational>{{1, 4}, {1, 2}, {1, 4}});
    CHECK(sep::path_profile(3, 2).p == std::vector<Rational>{{3, 5}, {4, 5}, {3, 5}});
    CHECK(sep::path_profile(4, 2).p == std::vector<Rational>{{5, 13}, {8, 13}, {8, 13}, {5, 13}});

    // N=25, K=12
    auto p = sep::path_profile(25, 12);
    CHECK(p.p[0] == Rational(37, 115));
    CHECK(p.p[1] == Rational(1306, 2645));
    CHECK(p.p[0].to_double() == Catch::Approx(0.32174).margin(5e-6));
    CHECK(p.p[1].to_double() == Catch::Approx(0.49376).margin(5e-6));

    // N=2 is a single edge: ends only, no interior
    CHECK(sep::path_profile(2, 1).p == std::vector<Rational>{{1, 2}, {1, 2}});
    CHECK(sep::path_profile(2, 2).p == std::vector<Rational>{{1, 1}, {1, 1}});

    CHECK_THROWS(sep::path_end_interior_ratio(2, 1));  // no interior vertex
    CHECK_THROWS(sep::path_profile(5, 0));
}

TEST_CASE("path end/interior ratio endpoints") {
    for (int n : {3, 7, 25}) {
        CHECK(sep::path_end_interior_ratio(n, 1) == Rational(1, 2));
        CHECK(sep::path_end_interior_ratio(n, n) == Rational(1));
        for (int k = 1; k < n; ++k)
            REQUIRE(sep::path_end_interior_ratio(n, k) <
                    sep::path_end_interior_ratio(n, k + 1));
    }
}

TEST_CASE("closed forms equal enumeration for every N up to 12") {
    for (int n = 2; n <= 12; ++n) {
        Graph star = Graph::star(n);
        Graph path = Graph::path(n);
        for (int k = 1; k <= n; ++k) {
            REQUIRE(sep::star_profile(n, k).p == sep::occupation_profile<Rational>(star, k).p);
            REQUIRE(sep::path_profile(n, k).p == sep::occupation_profile<Rational>(path, k).p);
        }
    }
}
