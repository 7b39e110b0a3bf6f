#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "sep/cli.hpp"
#include "sep/manifest.hpp"

using sep::Graph;
using sep::Rational;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("load_graph rejects defective input with a full report") {
    CHECK_NOTHROW(sep::load_graph("3\n0 1\n1 2\n"));
    try {
        sep::load_graph("3\n0 1\n1 2\nrate 1 0\n");
        FAIL("expected a validation error");
    } catch (const sep::error& e) {
        CHECK(std::string(e.what()).find("rate") != std::string::npos);
    }
    CHECK_THROWS_AS(sep::load_graph("4\n0 1\n2 3\n"), sep::error);  // disconnected
}

TEST_CASE("exact command emits the documented table") {
    sep::ExactCmd cmd;
    cmd.graph = Graph::star(3);
    cmd.k = 1;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_exact(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "k,vertex,degree,rate,D,p,D_fraction,p_fraction");
    CHECK(rows[1] == "1,0,2,1,2,0.5,2,1/2");
    CHECK(rows[2] == "1,1,1,1,1,0.25,1,1/4");
    CHECK(rows[3] == "1,2,1,1,1,0.25,1,1/4");
    CHECK(rows[4] == "1,sum,,,,1,,1");
}

TEST_CASE("exact command in log mode drops the fraction columns") {
    sep::ExactCmd cmd;
    cmd.graph = Graph::path(4);
    cmd.k = 2;
    cmd.mode = sep::WeightMode::log_domain;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_exact(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    CHECK(rows[0] == "k,vertex,degree,rate,D,p");
    CHECK(rows[1].substr(0, 12) == "2,0,1,1,1,0.");
    CHECK(rows[1].find("0.384615384615") != std::string::npos);  // 5/13
}

TEST_CASE("exact command over every K") {
    sep::ExactCmd cmd;
    cmd.graph = Graph::path(3);
    cmd.all_k = true;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_exact(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 1 + 3 * 4);  // header + (3 vertices + sum) per K
    CHECK(rows[4] == "1,sum,,,,1,,1");
    CHECK(rows[8] == "2,sum,,,,2,,2");
    CHECK(rows[12] == "3,sum,,,,3,,3");
}

TEST_CASE("closed-form command: star table") {
    sep::ClosedFormCmd cmd;
    cmd.family = "star";
    cmd.n = 3;
    cmd.all_k = true;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_closed_form(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] ==
          "k,p_center,p_leaf,ratio,p_center_fraction,p_leaf_fraction,ratio_fraction");
    CHECK(rows[1] == "1,0.5,0.25,0.5,1/2,1/4,1/2");
    CHECK(rows[2] == "2,0.8,0.6,0.75,4/5,3/5,3/4");
    CHECK(rows[3] == "3,1,1,1,1,1,1");
}

TEST_CASE("closed-form command: two-vertex path has no interior columns") {
    sep::ClosedFormCmd cmd;
    cmd.family = "path";
    cmd.n = 2;
    cmd.all_k = true;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_closed_form(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    CHECK(rows[0] == "k,p_end,p_end_fraction");
    CHECK(rows[1] == "1,0.5,1/2");
    CHECK(rows[2] == "2,1,1");

    cmd.n = 1;
    CHECK_THROWS(sep::cmd_closed_form(cmd, out, diag));
    cmd.n = 4;
    cmd.family = "ladder";
    CHECK_THROWS(sep::cmd_closed_form(cmd, out, diag));
}

TEST_CASE("simulate command compares against the exact profile") {
    sep::SimulateCmd cmd;
    cmd.graph = Graph::star(3);
    cmd.k = 1;
    cmd.horizon = 5e4;
    cmd.seed = 42;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_simulate(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "vertex,degree,p_hat,std_error,p_exact,abs_error");
    CHECK(rows[1].find(",0.5,") != std::string::npos);       // exact column
    CHECK(rows[4].substr(0, 6) == "sum,,1");                 // pooled sum is K
    CHECK(diag.str().find("attempts=") != std::string::npos);

    // identical command, identical bytes
    std::ostringstream out2, diag2;
    REQUIRE(sep::cmd_simulate(cmd, out2, diag2) == 0);
    CHECK(out.str() == out2.str());
    CHECK(diag.str() == diag2.str());
}

TEST_CASE("simulate command merges replicas") {
    sep::SimulateCmd cmd;
    cmd.graph = Graph::path(4);
    cmd.k = 2;
    cmd.horizon = 1e4;
    cmd.seed = 5;
    cmd.replicas = 3;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_simulate(cmd, out, diag) == 0);
    auto est_single = sep::run(cmd.graph, 2, 1e4, sep::derive_stream_seed(5, 0));
    auto rows = lines_of(out.str());
    // three replicas: the pooled estimate is not the single-run one
    CHECK(rows[1].find(sep::format_value(est_single.p_hat[0])) == std::string::npos);
}

TEST_CASE("sweep command groups by degree class") {
    sep::SweepCmd cmd;
    cmd.graph = Graph::path(4);
    cmd.exact_only = true;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_sweep(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 1 + 2 * 4);  // two degree classes per K
    CHECK(rows[0] == "k,degree_class,vertices,p_exact,p_sim,std_error");
    CHECK(rows[1] == "1,1,2,0.166666666667,,");
    CHECK(rows[2] == "1,2,2,0.333333333333,,");
    CHECK(rows[3] == "2,1,2,0.384615384615,,");
    CHECK(rows[4] == "2,2,2,0.615384615385,,");
}

TEST_CASE("exact command rejects K outside 0 < K <= N") {
    sep::ExactCmd cmd;
    cmd.graph = Graph::star(3);
    cmd.k = 0;
    std::ostringstream out, diag;
    try {
        sep::cmd_exact(cmd, out, diag);
        FAIL("expected a range error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("0 < K <= N") != std::string::npos);
    }
}

TEST_CASE("sweep of the two-vertex path") {
    sep::SweepCmd cmd;
    cmd.graph = Graph::path(2);
    cmd.exact_only = true;
    cmd.mode = sep::WeightMode::rational;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_sweep(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 3);  // one degree class, two K values
    CHECK(rows[1] == "1,1,2,0.5,,");
    CHECK(rows[2] == "2,1,2,1,,");
}

TEST_CASE("sweep command per vertex") {
    sep::SweepCmd cmd;
    cmd.graph = Graph::path(3);
    cmd.exact_only = true;
    cmd.per_vertex = true;
    cmd.mode = sep::WeightMode::rational;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_sweep(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 1 + 3 * 3);
    CHECK(rows[0] == "k,vertex,degree,p_exact,p_sim,std_error");
    CHECK(rows[1] == "1,0,1,0.25,,");
    CHECK(rows[2] == "1,1,2,0.5,,");
}

TEST_CASE("verify command passes on healthy graphs") {
    for (Graph g : {Graph::path(4), Graph::star(3), Graph::cycle(5)}) {
        sep::VerifyCmd cmd;
        cmd.graph = g;
        std::ostringstream out, diag;
        REQUIRE(sep::cmd_verify(cmd, out, diag) == 0);
        CHECK(out.str().find("fail") == std::string::npos);
        CHECK(out.str().find("pass") != std::string::npos);
    }
}

TEST_CASE("verify command reports skips above the cap") {
    sep::VerifyCmd cmd;
    cmd.graph = Graph::path(8);
    cmd.oracle_cap = 10;  // C(8,K) > 10 for most K
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_verify(cmd, out, diag) == 0);  // skips are not failures
    CHECK(out.str().find("skipped") != std::string::npos);
    CHECK(out.str().find("fail") == std::string::npos);
}

TEST_CASE("pretty tables align columns") {
    sep::ExactCmd cmd;
    cmd.graph = Graph::star(3);
    cmd.k = 1;
    cmd.pretty = true;
    std::ostringstream out, diag;
    REQUIRE(sep::cmd_exact(cmd, out, diag) == 0);
    auto rows = lines_of(out.str());
    CHECK(rows[0].find(',') == std::string::npos);
    CHECK(rows[0].find("vertex") != std::string::npos);
}

TEST_CASE("manifest serialization is stable and timestamp-free") {
    sep::RunManifest m;
    m.command = "simulate";
    m.argv = {"sepkit", "simulate", "--graph", "star.json", "--k", "1"};
    m.parameters = {{"k", 1}, {"horizon", 1e6}};
    m.weight_mode = "rational";
    m.uses_rng = true;
    m.seed = 42;
    m.replicas = 2;
    m.has_graph = true;
    m.graph_hash = sep::fnv1a("3\n0 1\n0 2\n");

    std::string a = sep::manifest_text(m);
    std::string b = sep::manifest_text(m);
    CHECK(a == b);
    CHECK(a.find("seed") != std::string::npos);
    CHECK(a.find("xoshiro256++") != std::string::npos);
    CHECK(a.find("time") == std::string::npos);
    CHECK(a.find("\"command\": \"simulate\"") != std::string::npos);

    // the graph hash follows the file content
    sep::RunManifest m2 = m;
    m2.graph_hash = sep::fnv1a("3\n0 1\n1 2\n");
    CHECK(sep::manifest_text(m2) != a);
}

TEST_CASE("csv formatting uses 12 significant digits and a dot separator") {
    CHECK(sep::format_value(0.5) == "0.5");
    CHECK(sep::format_value(5.0 / 13.0) == "0.384615384615");
    CHECK(sep::format_value(1.0) == "1");
    CHECK(sep::format_value(1e6) == "1000000");
    CHECK(sep::format_value(1.0 / 3.0) == "0.333333333333");
}
