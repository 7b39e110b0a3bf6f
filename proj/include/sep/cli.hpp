#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "sep/closed_form.hpp"
#include "sep/csv.hpp"
#include "sep/enumeration.hpp"
#include "sep/error.hpp"
#include "sep/graph.hpp"
#include "sep/occupancy.hpp"
#include "sep/oracle.hpp"
#include "sep/rng.hpp"
#include "sep/simulate.hpp"
#include "sep/weight.hpp"

namespace sep {

// Command implementations behind the sepkit front end. Each command takes a
// resolved option struct plus the table stream and returns a process exit
// code; diagnostics go to `diag`. Tables are CSV by default (12 significant
// digits, '.' separator) or aligned text under --pretty.

class TableWriter {
public:
    TableWriter(std::ostream& os, bool pretty, std::vector<std::string> header)
        : os_(os), pretty_(pretty) {
        if (pretty_)
            rows_.push_back(std::move(header));
        else
            write_csv_row(os_, header);
    }

    void row(std::vector<std::string> fields) {
        if (pretty_)
            rows_.push_back(std::move(fields));
        else
            write_csv_row(os_, fields);
    }

    void finish() {
        if (!pretty_) return;
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (width.size() <= i) width.resize(i + 1, 0);
                width[i] = std::max(width[i], r[i].size());
            }
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i > 0) os_ << "  ";
                os_ << r[i];
                if (i + 1 < r.size())
                    for (std::size_t pad = r[i].size(); pad < width[i]; ++pad) os_ << ' ';
            }
            os_ << '\n';
        }
    }

private:
    std::ostream& os_;
    bool pretty_;
    std::vector<std::vector<std::string>> rows_;
};

// Parses and validates a graph document; any defect is a hard error before
// computation starts.
inline Graph load_graph(const std::string& text) {
    Graph g = parse_graph_text(text);
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
        std::string msg = "invalid graph:";
        for (const auto& d : rep.defects) msg += " " + d + ";";
        msg.pop_back();
        throw error(msg);
    }
    return g;
}

inline std::string decimal(const Rational& r) { return format_value(r.to_double()); }
inline std::string decimal(const LogReal& r) { return format_value(r.to_double()); }

// --- exact ----------------------------------------------------------------

struct ExactCmd {
    Graph graph;
    int k = 0;
    bool all_k = false;
    WeightMode mode = WeightMode::rational;
    std::uint64_t cap = kDefaultEnumerationCap;
    bool pretty = false;
};

template <WeightScalar W>
int run_exact(const ExactCmd& cmd, std::ostream& out) {
    const Graph& g = cmd.graph;
    const bool fractions = std::is_same_v<W, Rational>;
    std::vector<std::string> header = {"k", "vertex", "degree", "rate", "D", "p"};
    if (fractions) {
        header.push_back("D_fraction");
        header.push_back("p_fraction");
    }
    TableWriter table(out, cmd.pretty, header);

    int k_lo = cmd.all_k ? 1 : cmd.k;
    int k_hi = cmd.all_k ? g.n : cmd.k;
    for (int k = k_lo; k <= k_hi; ++k) {
        OccupationProfile<W> prof = occupation_profile<W>(g, k, cmd.cap);
        typename W::Accum sum;
        for (int v = 0; v < g.n; ++v) {
            const W& p = prof.p[static_cast<std::size_t>(v)];
            sum.add(p);
            W d = vertex_weight<W>(g, v);
            std::vector<std::string> row = {std::to_string(k), std::to_string(v),
                                            std::to_string(g.degree[static_cast<std::size_t>(v)]),
                                            format_value(g.rate_value(v)), decimal(d), decimal(p)};
            if constexpr (std::is_same_v<W, Rational>) {
                row.push_back(d.str());
                row.push_back(p.str());
            }
            table.row(row);
        }
        std::vector<std::string> row = {std::to_string(k), "sum", "", "", "",
                                        decimal(sum.total())};
        if constexpr (std::is_same_v<W, Rational>) {
            row.push_back("");
            row.push_back(sum.total().str());
        }
        table.row(row);
    }
    table.finish();
    return 0;
}

inline int cmd_exact(const ExactCmd& cmd, std::ostream& out, std::ostream&) {
    if (cmd.mode == WeightMode::rational) return run_exact<Rational>(cmd, out);
    return run_exact<LogReal>(cmd, out);
}

// --- closed-form ----------------------------------------------------------

struct ClosedFormCmd {
    std::string family;  // "star" or "path"
    int n = 0;
    int k = 0;
    bool all_k = false;
    bool fractions = true;  // rational mode appends exact columns
    bool pretty = false;
};

inline int cmd_closed_form(const ClosedFormCmd& cmd, std::ostream& out, std::ostream&) {
    if (cmd.family != "star" && cmd.family != "path")
        throw error("closed-form: family must be star or path");
    if (cmd.n < 2) throw error("closed-form: N must be at least 2");
    const bool star = cmd.family == "star";
    const bool has_interior = star || cmd.n >= 3;

    std::vector<std::string> header = {"k"};
    const char* hi = star ? "p_center" : "p_end";
    const char* lo = star ? "p_leaf" : "p_interior";
    header.push_back(hi);
    if (has_interior) {
        header.push_back(lo);
        header.push_back("ratio");
    }
    if (cmd.fractions) {
        header.push_back(std::string(hi) + "_fraction");
        if (has_interior) {
            header.push_back(std::string(lo) + "_fraction");
            header.push_back("ratio_fraction");
        }
    }
    TableWriter table(out, cmd.pretty, header);

    int k_lo = cmd.all_k ? 1 : cmd.k;
    int k_hi = cmd.all_k ? cmd.n : cmd.k;
    if (k_lo <= 0 || k_hi > cmd.n) throw error("closed-form: K must satisfy 0 < K <= N");
    for (int k = k_lo; k <= k_hi; ++k) {
        Rational a, b, ratio;
        if (star) {
            auto prof = star_profile(cmd.n, k);
            a = prof.p[0];  // center
            b = prof.p[1];  // any leaf
            ratio = star_leaf_center_ratio(cmd.n, k);
        } else {
            auto prof = path_profile(cmd.n, k);
            a = prof.p[0];  // end
            if (has_interior) {
                b = prof.p[1];  // any interior vertex
                ratio = path_end_interior_ratio(cmd.n, k);
            }
        }
        std::vector<std::string> row = {std::to_string(k), decimal(a)};
        if (has_interior) {
            row.push_back(decimal(b));
            row.push_back(decimal(ratio));
        }
        if (cmd.fractions) {
            row.push_back(a.str());
            if (has_interior) {
                row.push_back(b.str());
                row.push_back(ratio.str());
            }
        }
        table.row(row);
    }
    table.finish();
    return 0;
}

// --- simulate -------------------------------------------------------------

struct SimulateCmd {
    Graph graph;
    int k = 0;
    double horizon = 1e6;
    double burn_in = -1.0;  // negative: default 1% of horizon
    std::uint64_t seed = 1;
    int replicas = 1;
    WeightMode mode = WeightMode::rational;
    std::uint64_t cap = kDefaultEnumerationCap;
    bool compare_exact = true;
    bool pretty = false;
};

template <WeightScalar W>
std::vector<double> exact_profile_values(const Graph& g, int k, std::uint64_t cap) {
    OccupationProfile<W> prof = occupation_profile<W>(g, k, cap);
    std::vector<double> out;
    for (const W& p : prof.p) out.push_back(p.to_double());
    return out;
}

inline SimulationEstimate simulate_replicas(const Graph& g, int k, double horizon,
                                            double burn_in, std::uint64_t seed, int replicas,
                                            std::uint64_t stream_offset = 0) {
    std::vector<SimulationEstimate> parts;
    for (int r = 0; r < replicas; ++r)
        parts.push_back(
            run(g, k, horizon, derive_stream_seed(seed, stream_offset + static_cast<std::uint64_t>(r)),
                burn_in));
    SimulationEstimate est = merge(parts);
    est.seed = seed;
    return est;
}

inline int cmd_simulate(const SimulateCmd& cmd, std::ostream& out, std::ostream& diag) {
    const Graph& g = cmd.graph;
    detail::require_k_range(g, cmd.k, "simulate");
    if (cmd.replicas < 1) throw error("simulate: replicas must be at least 1");

    SimulationEstimate est =
        simulate_replicas(g, cmd.k, cmd.horizon, cmd.burn_in, cmd.seed, cmd.replicas);

    std::vector<double> exact;
    bool have_exact = false;
    if (cmd.compare_exact && g.n <= kMaxExactVertices) {
        try {
            exact = cmd.mode == WeightMode::rational
                        ? exact_profile_values<Rational>(g, cmd.k, cmd.cap)
                        : exact_profile_values<LogReal>(g, cmd.k, cmd.cap);
            have_exact = true;
        } catch (const error&) {
            // above the enumeration cap: estimates only
        }
    }

    std::vector<std::string> header = {"vertex", "degree", "p_hat", "std_error"};
    if (have_exact) {
        header.push_back("p_exact");
        header.push_back("abs_error");
    }
    TableWriter table(out, cmd.pretty, header);
    detail::KahanAcc sum;
    for (int v = 0; v < g.n; ++v) {
        auto vi = static_cast<std::size_t>(v);
        sum.add(est.occupied_time[vi]);
        std::vector<std::string> row = {std::to_string(v),
                                        std::to_string(g.degree[vi]),
                                        format_value(est.p_hat[vi]),
                                        format_value(est.std_error[vi])};
        if (have_exact) {
            row.push_back(format_value(exact[vi]));
            row.push_back(format_value(std::abs(est.p_hat[vi] - exact[vi])));
        }
        table.row(row);
    }
    std::vector<std::string> row = {"sum", "", format_value(sum.value() / est.window), ""};
    if (have_exact) {
        row.push_back(std::to_string(cmd.k));
        row.push_back("");
    }
    table.row(row);
    table.finish();
    diag << "# attempts=" << est.attempts << " window=" << format_value(est.window) << "\n";
    return 0;
}

// --- sweep ----------------------------------------------------------------

struct SweepCmd {
    Graph graph;
    double horizon = 1e6;
    double burn_in = -1.0;
    std::uint64_t seed = 1;
    int replicas = 1;
    WeightMode mode = WeightMode::log_domain;  // plot data: fast carrier by default
    std::uint64_t cap = kDefaultEnumerationCap;
    bool per_vertex = false;
    bool exact_only = false;
    bool sim_only = false;
    bool pretty = false;
};

inline int cmd_sweep(const SweepCmd& cmd, std::ostream& out, std::ostream& diag) {
    const Graph& g = cmd.graph;
    if (cmd.exact_only && cmd.sim_only) throw error("sweep: choose at most one of --exact-only/--sim-only");

    std::vector<std::string> header =
        cmd.per_vertex ? std::vector<std::string>{"k", "vertex", "degree", "p_exact", "p_sim",
                                                  "std_error"}
                       : std::vector<std::string>{"k", "degree_class", "vertices", "p_exact",
                                                  "p_sim", "std_error"};
    TableWriter table(out, cmd.pretty, header);

    // vertices by degree, ascending, mirroring the usual plot legend
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < g.n; ++v) classes[g.degree[static_cast<std::size_t>(v)]].push_back(v);

    int skipped_exact = 0;
    for (int k = 1; k <= g.n; ++k) {
        std::vector<double> exact;
        bool have_exact = false;
        if (!cmd.sim_only && g.n <= kMaxExactVertices) {
            try {
                exact = cmd.mode == WeightMode::rational
                            ? exact_profile_values<Rational>(g, k, cmd.cap)
                            : exact_profile_values<LogReal>(g, k, cmd.cap);
                have_exact = true;
            } catch (const error&) {
                ++skipped_exact;
            }
        }
        SimulationEstimate est;
        bool have_sim = false;
        if (!cmd.exact_only) {
            est = simulate_replicas(g, k, cmd.horizon, cmd.burn_in, cmd.seed, cmd.replicas,
                                    static_cast<std::uint64_t>(k - 1) *
                                        static_cast<std::uint64_t>(cmd.replicas));
            have_sim = true;
        }

        if (cmd.per_vertex) {
            for (int v = 0; v < g.n; ++v) {
                auto vi = static_cast<std::size_t>(v);
                table.row({std::to_string(k), std::to_string(v), std::to_string(g.degree[vi]),
                           have_exact ? format_value(exact[vi]) : "",
                           have_sim ? format_value(est.p_hat[vi]) : "",
                           have_sim ? format_value(est.std_error[vi]) : ""});
            }
        } else {
            for (const auto& [deg, members] : classes) {
                double pe = 0.0, ps = 0.0, se2 = 0.0;
                for (int v : members) {
                    auto vi = static_cast<std::size_t>(v);
                    if (have_exact) pe += exact[vi];
                    if (have_sim) {
                        ps += est.p_hat[vi];
                        se2 += est.std_error[vi] * est.std_error[vi];
                    }
                }
                auto m = static_cast<double>(members.size());
                table.row({std::to_string(k), std::to_string(deg),
                           std::to_string(members.size()),
                           have_exact ? format_value(pe / m) : "",
                           have_sim ? format_value(ps / m) : "",
                           have_sim ? format_value(std::sqrt(se2) / m) : ""});
            }
        }
    }
    table.finish();
    if (skipped_exact > 0)
        diag << "# exact columns skipped for " << skipped_exact
             << " particle counts (enumeration cap " << cmd.cap << ")\n";
    return 0;
}

// --- verify ---------------------------------------------------------------

struct VerifyCmd {
    Graph graph;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t oracle_cap = kDefaultOracleCap;
    double tv_tol = 1e-10;
    bool pretty = false;
};

// Runs the whole check battery: per-K irreducibility, detailed balance,
// oracle total variation and the sum rule, then graph-level monotonicity and
// log-concavity. Checks beyond a cap are reported as skipped, not failed.
inline int cmd_verify(const VerifyCmd& cmd, std::ostream& out, std::ostream&) {
    const Graph& g = cmd.graph;
    TableWriter table(out, cmd.pretty, {"check", "scope", "status", "detail"});
    bool all_ok = true;

    auto record = [&table, &all_ok](const std::string& check, const std::string& scope, bool ok,
                                    const std::string& detail) {
        table.row({check, scope, ok ? "pass" : "fail", detail});
        if (!ok) all_ok = false;
    };
    auto skipped = [&table](const std::string& check, const std::string& scope,
                            const std::string& why) { table.row({check, scope, "skipped", why}); };

    for (int k = 1; k <= g.n; ++k) {
        std::string scope = "K=" + std::to_string(k);

        try {
            bool ok = check_irreducibility(g, k, cmd.oracle_cap);
            record("irreducibility", scope, ok, ok ? "all configurations reached" : "class splits");
        } catch (const error& e) {
            skipped("irreducibility", scope, e.what());
        }

        try {
            StationaryDistribution<Rational> dist = stationary_measure<Rational>(g, k, cmd.cap);
            BalanceReport<Rational> bal = check_detailed_balance<Rational>(g, dist);
            record("detailed_balance", scope, bal.zero(),
                   bal.zero() ? "residual exactly zero"
                              : "residual " + format_value(bal.max_residual.to_double()));
        } catch (const error& e) {
            skipped("detailed_balance", scope, e.what());
        }

        try {
            auto gen = build_generator<double>(g, k, cmd.oracle_cap);
            std::vector<double> pi = solve_stationary(gen);
            StationaryDistribution<Rational> dist =
                stationary_measure<Rational>(g, k, cmd.oracle_cap);
            double tv = 0.0;
            for (std::size_t i = 0; i < pi.size(); ++i)
                tv += std::abs(pi[i] - dist.mass[i].to_double());
            tv *= 0.5;
            record("oracle_total_variation", scope, tv <= cmd.tv_tol,
                   "TV=" + format_value(tv));
        } catch (const error& e) {
            skipped("oracle_total_variation", scope, e.what());
        }

        try {
            OccupationProfile<Rational> prof = occupation_profile<Rational>(g, k, cmd.cap);
            bool ok = check_sum_rule(prof);
            record("sum_rule", scope, ok, ok ? "sum equals K exactly" : "sum differs from K");
        } catch (const error& e) {
            skipped("sum_rule", scope, e.what());
        }
    }

    try {
        MonotonicityReport<Rational> mono = check_pairwise_monotonicity<Rational>(g, cmd.cap);
        record("monotonicity", "graph", mono.pass(),
               std::to_string(mono.pairs.size()) + " ordered pairs, " +
                   std::to_string(mono.equal_pairs.size()) + " tied pairs");
    } catch (const error& e) {
        skipped("monotonicity", "graph", e.what());
    }

    try {
        LogConcavityReport<Rational> lc = check_sigma_log_concavity<Rational>(g, cmd.cap);
        record("log_concavity", "graph", lc.pass(),
               std::to_string(lc.entries.size()) + " strict inequalities");
    } catch (const error& e) {
        skipped("log_concavity", "graph", e.what());
    }

    table.finish();
    return all_ok ? 0 : 1;
}

} // namespace sep
