#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "sep/closed_form.hpp"
#include "sep/rng.hpp"
#include "sep/simulate.hpp"

using sep::Graph;
using sep::Placement;

TEST_CASE("rng streams are deterministic and distinct") {
    sep::Xoshiro256pp a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        REQUIRE(x == b.next());
    }
    bool differs = false;
    sep::Xoshiro256pp a2(42);
    for (int i = 0; i < 100; ++i)
        if (a2.next() != c.next()) differs = true;
    CHECK(differs);

    // derived stream seeds spread out
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 64; ++i) seeds.insert(sep::derive_stream_seed(1, i));
    CHECK(seeds.size() == 64);

    // uniforms live in [0,1), exponentials are positive and finite
    sep::Xoshiro256pp r(7);
    for (int i = 0; i < 10000; ++i) {
        double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        double e = r.exponential(2.0);
        REQUIRE(e > 0.0);
        REQUIRE(std::isfinite(e));
        REQUIRE(r.below(7) < 7u);
    }
}

TEST_CASE("initial placement") {
    Graph g = Graph::path(6);
    auto s = sep::init_state(g, 3, Placement::lowest_index, 1);
    CHECK(s.particles == std::vector<int>{0, 1, 2});
    CHECK(s.occupied == std::vector<std::uint8_t>{1, 1, 1, 0, 0, 0});

    auto r1 = sep::init_state(g, 3, Placement::seeded_random, 9);
    auto r2 = sep::init_state(g, 3, Placement::seeded_random, 9);
    CHECK(r1.particles == r2.particles);  // same seed, same placement
    std::set<int> distinct(r1.particles.begin(), r1.particles.end());
    CHECK(distinct.size() == 3);
    for (int v : r1.particles) CHECK((v >= 0 && v < 6));

    CHECK_THROWS(sep::init_state(g, 0, Placement::lowest_index, 1));
    CHECK_THROWS(sep::init_state(g, 7, Placement::lowest_index, 1));
}

TEST_CASE("step conserves particles and moves along edges") {
    Graph g = Graph::star(5);
    auto s = sep::init_state(g, 2, Placement::lowest_index, 123);
    for (int i = 0; i < 5000; ++i) {
        auto before = s.occupied;
        double t_before = s.elapsed.value();
        sep::step(s);
        REQUIRE(s.elapsed.value() > t_before);  // time always advances

        int count = 0;
        for (auto o : s.occupied) count += o;
        REQUIRE(count == 2);

        // at most one particle moved, and only to a neighbor of its origin
        std::vector<int> gone, born;
        for (int v = 0; v < 5; ++v) {
            if (before[static_cast<std::size_t>(v)] && !s.occupied[static_cast<std::size_t>(v)])
                gone.push_back(v);
            if (!before[static_cast<std::size_t>(v)] && s.occupied[static_cast<std::size_t>(v)])
                born.push_back(v);
        }
        REQUIRE(gone.size() == born.size());
        REQUIRE(gone.size() <= 1);
        if (gone.size() == 1) {
            const auto& adj = g.adjacency[static_cast<std::size_t>(gone[0])];
            REQUIRE(std::find(adj.begin(), adj.end(), born[0]) != adj.end());
        }
    }
    CHECK(s.attempts == 5000);
}

TEST_CASE("full graph only advances the clock") {
    Graph g = Graph::path(3);
    auto s = sep::init_state(g, 3, Placement::lowest_index, 5);
    for (int i = 0; i < 100; ++i) sep::step(s);
    CHECK(s.occupied == std::vector<std::uint8_t>{1, 1, 1});
    CHECK(s.attempts == 100);
    CHECK(s.elapsed.value() > 0.0);
}

TEST_CASE("run: estimates approach the exact values") {
    Graph g = Graph::star(3);
    auto est = sep::run(g, 1, 2e5, 42);
    REQUIRE(est.p_hat.size() == 3);
    CHECK(std::abs(est.p_hat[0] - 0.5) < 0.01);
    CHECK(std::abs(est.p_hat[1] - 0.25) < 0.01);
    CHECK(std::abs(est.p_hat[2] - 0.25) < 0.01);
    for (double se : est.std_error) {
        CHECK(se > 0.0);
        CHECK(se < 0.01);
    }
    CHECK(est.attempts > 100000);
    CHECK(est.window == Catch::Approx(2e5 * 0.99));
}

TEST_CASE("run: occupied time sums to K times the window") {
    Graph g = Graph::grid(3, 3);
    for (int k : {1, 4, 8}) {
        auto est = sep::run(g, k, 2e4, 7);
        double total = 0.0;
        for (double t : est.occupied_time) total += t;
        REQUIRE(std::abs(total / est.window - k) <= 1e-12);
    }
}

TEST_CASE("run: full occupancy is exact with zero error") {
    Graph g = Graph::path(4);
    auto est = sep::run(g, 4, 1000.0, 99);
    for (double p : est.p_hat) CHECK(p == 1.0);
    for (double se : est.std_error) CHECK(se == 0.0);
}

TEST_CASE("run is bit-deterministic in its inputs") {
    Graph g = Graph::path(5);
    auto a = sep::run(g, 2, 5e3, 11);
    auto b = sep::run(g, 2, 5e3, 11);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.std_error == b.std_error);
    CHECK(a.attempts == b.attempts);

    auto c = sep::run(g, 2, 5e3, 12);
    CHECK(a.p_hat != c.p_hat);
}

TEST_CASE("run validates horizon and burn-in") {
    Graph g = Graph::path(3);
    CHECK_THROWS(sep::run(g, 1, 0.0, 1));
    CHECK_THROWS(sep::run(g, 1, -5.0, 1));
    CHECK_THROWS(sep::run(g, 1, 100.0, 1, 100.0));  // burn-in must stay below horizon
    CHECK_NOTHROW(sep::run(g, 1, 100.0, 1, 0.0));
}

TEST_CASE("merge pools replicas by time") {
    Graph g = Graph::star(4);
    auto e1 = sep::run(g, 2, 1e4, 1);
    auto e2 = sep::run(g, 2, 1e4, 2);
    auto e3 = sep::run(g, 2, 1e4, 3);

    auto m = sep::merge({e1, e2, e3});
    CHECK(m.window == Catch::Approx(3 * e1.window));
    CHECK(m.attempts == e1.attempts + e2.attempts + e3.attempts);
    for (std::size_t v = 0; v < 4; ++v) {
        double pooled = (e1.occupied_time[v] + e2.occupied_time[v] + e3.occupied_time[v]) /
                        (e1.window + e2.window + e3.window);
        REQUIRE(m.p_hat[v] == Catch::Approx(pooled).margin(1e-15));
        REQUIRE(m.std_error[v] <= std::max({e1.std_error[v], e2.std_error[v], e3.std_error[v]}));
    }

    // merging an estimate with itself keeps p_hat, doubles the window
    auto dbl = sep::merge({e1, e1});
    for (std::size_t v = 0; v < 4; ++v)
        REQUIRE(dbl.p_hat[v] == Catch::Approx(e1.p_hat[v]).margin(1e-15));
    CHECK(dbl.window == Catch::Approx(2 * e1.window));

    // associativity up to roundoff
    auto left = sep::merge({sep::merge({e1, e2}), e3});
    for (std::size_t v = 0; v < 4; ++v)
        REQUIRE(left.p_hat[v] == Catch::Approx(m.p_hat[v]).margin(1e-15));

    CHECK_THROWS(sep::merge({}));
    auto other = sep::run(Graph::path(4), 2, 1e3, 1);
    CHECK_THROWS(sep::merge({e1, other}));  // different graphs cannot pool
}

TEST_CASE("estimates track the closed forms on a larger star") {
    Graph g = Graph::star(10);
    auto est = sep::run(g, 4, 1e5, 31);
    auto exact = sep::star_profile(10, 4);
    CHECK(std::abs(est.p_hat[0] - exact.p[0].to_double()) < 0.02);
    CHECK(std::abs(est.p_hat[3] - exact.p[1].to_double()) < 0.02);
}
