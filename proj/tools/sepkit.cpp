// sepkit: command-line front end for the exclusion-process toolkit.
//
// Subcommands: exact, closed-form, simulate, sweep, verify. Tables go to
// stdout (or --output FILE); a reproducibility manifest goes to stderr and,
// when --output is used, to FILE.manifest.json alongside the table.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sep/sep.hpp"

namespace {

struct Args {
    std::string graph_path;
    std::string family;
    int n = 0;
    int rows = 0;
    int cols = 0;
    int k = -1;
    bool all_k = false;
    std::string mode;  // per-command default filled in below
    std::uint64_t cap = sep::kDefaultEnumerationCap;
    std::uint64_t oracle_cap = sep::kDefaultOracleCap;
    double horizon = 1e6;
    double burn_in = -1.0;
    std::string seed = "1";
    int replicas = 1;
    bool per_vertex = false;
    bool exact_only = false;
    bool sim_only = false;
    bool no_compare = false;
    bool pretty = false;
    std::string output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sep::error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

sep::WeightMode parse_mode(const std::string& mode) {
    if (mode == "rational") return sep::WeightMode::rational;
    if (mode == "log") return sep::WeightMode::log_domain;
    throw sep::error("mode must be rational or log");
}

// --seed takes an integer or "auto"; auto draws once from the OS and the
// chosen value is printed so the run stays reproducible after the fact
std::uint64_t resolve_seed(const std::string& seed, std::ostream& diag) {
    if (seed == "auto") {
        std::random_device rd;
        std::uint64_t chosen =
            (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
        diag << "# seed auto -> " << chosen << "\n";
        return chosen;
    }
    try {
        std::size_t used = 0;
        std::uint64_t value = std::stoull(seed, &used);
        if (used != seed.size()) throw std::invalid_argument(seed);
        return value;
    } catch (const std::exception&) {
        throw sep::error("seed must be a non-negative integer or 'auto'");
    }
}

// builds the family graph for sweep / closed-form style invocations
sep::Graph family_graph(const Args& a) {
    if (a.family == "star") return sep::Graph::star(a.n);
    if (a.family == "path") return sep::Graph::path(a.n);
    if (a.family == "cycle") return sep::Graph::cycle(a.n);
    if (a.family == "grid") {
        if (a.rows <= 0 || a.cols <= 0)
            throw sep::error("grid family needs --rows and --cols");
        return sep::Graph::grid(a.rows, a.cols);
    }
    throw sep::error("family must be star, path, cycle or grid");
}

struct OutputTarget {
    std::ostream* table = &std::cout;
    std::ofstream file;
    std::string path;

    explicit OutputTarget(const std::string& out_path) : path(out_path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw sep::error("cannot open output file: " + path);
        table = &file;
    }
};

void emit_manifest(const sep::RunManifest& m, const std::string& output_path) {
    std::string text = sep::manifest_text(m);
    std::cerr << text;
    if (!output_path.empty()) {
        std::ofstream f(output_path + ".manifest.json", std::ios::binary);
        if (f) f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and simulated occupation probabilities of the exclusion process"};
    app.require_subcommand(1);
    Args a;

    auto add_graph = [&a](CLI::App* c, bool required = true) {
        auto* opt = c->add_option("--graph", a.graph_path, "graph file (structured or edge list)");
        if (required) opt->required();
    };
    auto add_k = [&a](CLI::App* c) {
        c->add_option("--k", a.k, "particle count K");
        c->add_flag("--all-k", a.all_k, "emit every K from 1 to N");
    };
    auto add_common = [&a](CLI::App* c) {
        c->add_option("--output", a.output, "write the table here instead of stdout");
        c->add_flag("--pretty", a.pretty, "aligned text instead of CSV");
    };
    auto add_mode = [&a](CLI::App* c, const char* dflt) {
        c->add_option("--mode", a.mode, std::string("weight carrier: rational|log (default ") +
                                            dflt + ")");
    };
    auto add_sim = [&a](CLI::App* c) {
        c->add_option("--horizon", a.horizon, "simulated time span (default 1e6)");
        c->add_option("--burn-in", a.burn_in, "discarded initial time (default 1% of horizon)");
        c->add_option("--seed", a.seed, "RNG seed integer, or 'auto' (default 1)");
        c->add_option("--replicas", a.replicas, "independent replicas to merge (default 1)");
    };

    CLI::App* c_exact = app.add_subcommand("exact", "per-vertex occupation probabilities");
    add_graph(c_exact);
    add_k(c_exact);
    add_mode(c_exact, "rational");
    c_exact->add_option("--cap", a.cap, "largest configuration class to enumerate");
    add_common(c_exact);

    CLI::App* c_closed = app.add_subcommand("closed-form", "star/path closed-form table");
    c_closed->add_option("--family", a.family, "star or path")->required();
    c_closed->add_option("--n", a.n, "number of vertices")->required();
    add_k(c_closed);
    add_mode(c_closed, "rational");
    add_common(c_closed);

    CLI::App* c_sim = app.add_subcommand("simulate", "event-driven estimate of the same");
    add_graph(c_sim);
    c_sim->add_option("--k", a.k, "particle count K")->required();
    add_sim(c_sim);
    add_mode(c_sim, "rational");
    c_sim->add_option("--cap", a.cap, "enumeration cap for the comparison column");
    c_sim->add_flag("--no-compare", a.no_compare, "skip the exact comparison column");
    add_common(c_sim);

    CLI::App* c_sweep = app.add_subcommand("sweep", "plot data over K = 1..N");
    add_graph(c_sweep, /*required=*/false);
    c_sweep->add_option("--family", a.family, "star, path, cycle or grid");
    c_sweep->add_option("--n", a.n, "number of vertices (family graphs)");
    c_sweep->add_option("--rows", a.rows, "grid rows");
    c_sweep->add_option("--cols", a.cols, "grid columns");
    add_sim(c_sweep);
    add_mode(c_sweep, "log");
    c_sweep->add_option("--cap", a.cap, "enumeration cap for exact columns");
    c_sweep->add_flag("--per-vertex", a.per_vertex, "one row per vertex instead of per degree class");
    c_sweep->add_flag("--exact-only", a.exact_only, "skip simulation columns");
    c_sweep->add_flag("--sim-only", a.sim_only, "skip exact columns");
    add_common(c_sweep);

    CLI::App* c_verify = app.add_subcommand("verify", "run the structural check battery");
    add_graph(c_verify);
    c_verify->add_option("--cap", a.cap, "enumeration cap");
    c_verify->add_option("--oracle-cap", a.oracle_cap, "generator-solve cap");
    add_common(c_verify);

    CLI11_PARSE(app, argc, argv);

    // unset --mode defaults to the fast carrier for sweeps, exact otherwise
    if (a.mode.empty()) a.mode = c_sweep->parsed() ? "log" : "rational";

    std::vector<std::string> argv_copy(argv, argv + argc);
    try {
        sep::RunManifest manifest;
        manifest.argv = argv_copy;

        if (c_exact->parsed() || c_sim->parsed() || c_verify->parsed() ||
            (c_sweep->parsed() && !a.graph_path.empty())) {
            manifest.has_graph = true;
        }
        std::string graph_text;
        if (manifest.has_graph) {
            graph_text = read_file(a.graph_path);
            manifest.graph_hash = sep::fnv1a(graph_text);
        }

        if (c_exact->parsed()) {
            if (a.all_k == (a.k >= 0)) throw sep::error("exact: give exactly one of --k/--all-k");
            sep::ExactCmd cmd;
            cmd.k = a.k;
            cmd.all_k = a.all_k;
            cmd.mode = parse_mode(a.mode);
            cmd.cap = a.cap;
            cmd.pretty = a.pretty;
            manifest.command = "exact";
            manifest.weight_mode = a.mode;
            manifest.parameters = {{"graph", a.graph_path},
                                   {"k", a.all_k ? nlohmann::ordered_json("all") :
                                                   nlohmann::ordered_json(a.k)},
                                   {"cap", a.cap},
                                   {"pretty", a.pretty}};
            emit_manifest(manifest, a.output);
            cmd.graph = sep::load_graph(graph_text);
            OutputTarget target(a.output);
            return sep::cmd_exact(cmd, *target.table, std::cerr);
        }

        if (c_closed->parsed()) {
            if (a.all_k == (a.k >= 0))
                throw sep::error("closed-form: give exactly one of --k/--all-k");
            sep::ClosedFormCmd cmd;
            cmd.family = a.family;
            cmd.n = a.n;
            cmd.k = a.k;
            cmd.all_k = a.all_k;
            cmd.fractions = parse_mode(a.mode) == sep::WeightMode::rational;
            cmd.pretty = a.pretty;
            manifest.command = "closed-form";
            manifest.weight_mode = a.mode;
            manifest.parameters = {{"family", a.family},
                                   {"n", a.n},
                                   {"k", a.all_k ? nlohmann::ordered_json("all") :
                                                   nlohmann::ordered_json(a.k)},
                                   {"pretty", a.pretty}};
            emit_manifest(manifest, a.output);
            OutputTarget target(a.output);
            return sep::cmd_closed_form(cmd, *target.table, std::cerr);
        }

        if (c_sim->parsed()) {
            sep::SimulateCmd cmd;
            cmd.k = a.k;
            cmd.horizon = a.horizon;
            cmd.burn_in = a.burn_in;
            cmd.seed = resolve_seed(a.seed, std::cerr);
            cmd.replicas = a.replicas;
            cmd.mode = parse_mode(a.mode);
            cmd.cap = a.cap;
            cmd.compare_exact = !a.no_compare;
            cmd.pretty = a.pretty;
            manifest.command = "simulate";
            manifest.weight_mode = a.mode;
            manifest.uses_rng = true;
            manifest.seed = cmd.seed;
            manifest.replicas = cmd.replicas;
            manifest.parameters = {{"graph", a.graph_path},
                                   {"k", a.k},
                                   {"horizon", a.horizon},
                                   {"burn_in", cmd.burn_in < 0 ? 0.01 * a.horizon : cmd.burn_in},
                                   {"replicas", a.replicas},
                                   {"compare_exact", cmd.compare_exact},
                                   {"cap", a.cap},
                                   {"pretty", a.pretty}};
            emit_manifest(manifest, a.output);
            cmd.graph = sep::load_graph(graph_text);
            OutputTarget target(a.output);
            return sep::cmd_simulate(cmd, *target.table, std::cerr);
        }

        if (c_sweep->parsed()) {
            sep::SweepCmd cmd;
            cmd.horizon = a.horizon;
            cmd.burn_in = a.burn_in;
            cmd.seed = resolve_seed(a.seed, std::cerr);
            cmd.replicas = a.replicas;
            cmd.mode = parse_mode(a.mode);
            cmd.cap = a.cap;
            cmd.per_vertex = a.per_vertex;
            cmd.exact_only = a.exact_only;
            cmd.sim_only = a.sim_only;
            manifest.command = "sweep";
            manifest.weight_mode = a.mode;
            manifest.uses_rng = !a.exact_only;
            manifest.seed = cmd.seed;
            manifest.replicas = cmd.replicas;
            manifest.parameters = {{"graph", a.graph_path},
                                   {"family", a.family},
                                   {"n", a.n},
                                   {"rows", a.rows},
                                   {"cols", a.cols},
                                   {"horizon", a.horizon},
                                   {"burn_in", cmd.burn_in < 0 ? 0.01 * a.horizon : cmd.burn_in},
                                   {"replicas", a.replicas},
                                   {"cap", a.cap},
                                   {"per_vertex", a.per_vertex},
                                   {"exact_only", a.exact_only},
                                   {"sim_only", a.sim_only},
                                   {"pretty", a.pretty}};
            cmd.pretty = a.pretty;
            emit_manifest(manifest, a.output);
            if (!a.graph_path.empty())
                cmd.graph = sep::load_graph(graph_text);
            else
                cmd.graph = family_graph(a);
            OutputTarget target(a.output);
            return sep::cmd_sweep(cmd, *target.table, std::cerr);
        }

        if (c_verify->parsed()) {
            sep::VerifyCmd cmd;
            cmd.cap = a.cap;
            cmd.oracle_cap = a.oracle_cap;
            cmd.pretty = a.pretty;
            manifest.command = "verify";
            manifest.parameters = {{"graph", a.graph_path},
                                   {"cap", a.cap},
                                   {"oracle_cap", a.oracle_cap},
                                   {"pretty", a.pretty}};
            emit_manifest(manifest, a.output);
            cmd.graph = sep::load_graph(graph_text);
            OutputTarget target(a.output);
            return sep::cmd_verify(cmd, *target.table, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
