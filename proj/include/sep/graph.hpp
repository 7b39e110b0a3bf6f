#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sep/config.hpp"
#include "sep/error.hpp"
#include "sep/weight.hpp"

namespace sep {

// Finite simple undirected graph with one positive jump rate per vertex.
// Construction is permissive: defects (self-loops, duplicate edges, isolated
// vertices, nonpositive rates, disconnection) are collected by validate()
// rather than thrown, so a report can name all of them at once. Exact
// operations assume a graph that validate() accepts.
//
// Immutable after construction; safe to share across threads.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // as parsed, unnormalized
    std::vector<Rational> rates;             // exact; default 1
    std::vector<int> degree;
    std::vector<std::vector<int>> adjacency;

    Graph() = default;  // empty placeholder; validate() rejects it

    Graph(int num_vertices, std::vector<std::pair<int, int>> edge_list,
          std::vector<Rational> vertex_rates = {})
        : n(num_vertices), edges(std::move(edge_list)), rates(std::move(vertex_rates)) {
        if (n <= 0) throw error("graph must have at least one vertex");
        for (auto [u, v] : edges)
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::out_of_range("edge endpoint out of range");
        if (rates.empty()) rates.assign(static_cast<std::size_t>(n), Rational::one());
        if (static_cast<int>(rates.size()) != n)
            throw error("rates list must have one entry per vertex");
        degree.assign(static_cast<std::size_t>(n), 0);
        adjacency.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges) {
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
            adjacency[static_cast<std::size_t>(u)].push_back(v);
            adjacency[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& adj : adjacency) std::sort(adj.begin(), adj.end());
    }

    double rate_value(int x) const { return rates[static_cast<std::size_t>(x)].to_double(); }

    static Graph star(int num_vertices) {
        std::vector<std::pair<int, int>> e;
        for (int v = 1; v < num_vertices; ++v) e.emplace_back(0, v);
        return Graph(num_vertices, std::move(e));
    }

    static Graph path(int num_vertices) {
        std::vector<std::pair<int, int>> e;
        for (int v = 0; v + 1 < num_vertices; ++v) e.emplace_back(v, v + 1);
        return Graph(num_vertices, std::move(e));
    }

    static Graph cycle(int num_vertices) {
        std::vector<std::pair<int, int>> e;
        for (int v = 0; v + 1 < num_vertices; ++v) e.emplace_back(v, v + 1);
        e.emplace_back(num_vertices - 1, 0);
        return Graph(num_vertices, std::move(e));
    }

    // rows*cols grid, row-major vertex ids
    static Graph grid(int rows, int cols) {
        std::vector<std::pair<int, int>> e;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                int v = r * cols + c;
                if (c + 1 < cols) e.emplace_back(v, v + 1);
                if (r + 1 < rows) e.emplace_back(v, v + cols);
            }
        return Graph(rows * cols, std::move(e));
    }
};

struct ValidationReport {
    bool connected = false;
    std::vector<std::string> defects;
    bool ok() const { return connected && defects.empty(); }
};

inline ValidationReport validate(const Graph& g) {
    ValidationReport rep;
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        if (u == v) rep.defects.push_back("self-loop at vertex " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            rep.defects.push_back("duplicate edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
    }
    for (int x = 0; x < g.n; ++x) {
        if (g.degree[static_cast<std::size_t>(x)] == 0)
            rep.defects.push_back("isolated vertex " + std::to_string(x));
        if (!g.rates[static_cast<std::size_t>(x)].positive())
            rep.defects.push_back("nonpositive rate at vertex " + std::to_string(x));
    }

    // breadth-first from vertex 0
    std::vector<char> reached(static_cast<std::size_t>(g.n), 0);
    std::queue<int> q;
    q.push(0);
    reached[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.adjacency[static_cast<std::size_t>(u)])
            if (!reached[static_cast<std::size_t>(v)]) {
                reached[static_cast<std::size_t>(v)] = 1;
                ++count;
                q.push(v);
            }
    }
    rep.connected = count == g.n;
    if (!rep.connected) rep.defects.push_back("graph is not connected");
    return rep;
}

// D(x) = deg(x) / rho_x
template <WeightScalar W>
W vertex_weight(const Graph& g, int x) {
    if (x < 0 || x >= g.n) throw std::out_of_range("vertex id out of range");
    return W::vertex_weight(g.degree[static_cast<std::size_t>(x)],
                            g.rates[static_cast<std::size_t>(x)]);
}

// D(eta) = prod over occupied vertices; the empty product is 1.
template <WeightScalar W>
W config_weight(const Graph& g, Config eta) {
    if (g.n < kMaxExactVertices && (eta.bits >> g.n) != 0)
        throw std::out_of_range("configuration member out of range");
    W w = W::one();
    for (std::uint64_t b = eta.bits; b; b &= b - 1)
        w *= vertex_weight<W>(g, std::countr_zero(b));
    return w;
}

// The carrier used when none is forced: exact rationals. Rates are parsed
// exactly whenever the file contains decimals or p/q ratios, which is every
// well-formed file, so log-domain mode is an explicit opt-in for scale.
inline WeightMode select_weight_mode(const Graph&) { return WeightMode::rational; }

// ---------------------------------------------------------------------------
// Parsing. Two accepted formats (see README): a JSON document with fields
// num_vertices / edges / rates, and a plain edge-list text whose first
// significant line is N followed by "u v" lines and optional "rate x value"
// lines. Rates may be decimals ("0.5"), ratios ("1/2"), or integers.

namespace detail {

inline Rational parse_rate_token(const std::string& tok, const std::string& where) {
    auto r = parse_rational(tok);
    if (!r) throw parse_error(where, "cannot parse rate '" + tok + "'");
    return *r;
}

inline Graph parse_graph_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("graph document", e.what());
    }
    if (!doc.is_object()) throw parse_error("graph document", "top level must be an object");
    if (!doc.contains("num_vertices") || !doc["num_vertices"].is_number_integer())
        throw parse_error("num_vertices", "missing or not an integer");
    int n = doc["num_vertices"].get<int>();
    if (n <= 0) throw parse_error("num_vertices", "must be positive");

    std::vector<std::pair<int, int>> edges;
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw parse_error("edges", "missing or not a list");
    std::size_t i = 0;
    for (const auto& e : doc["edges"]) {
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw parse_error(where, "edge must be a pair of integers");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error(where, "vertex id out of range");
        edges.emplace_back(u, v);
        ++i;
    }

    std::vector<Rational> rates;
    if (doc.contains("rates")) {
        if (!doc["rates"].is_array())
            throw parse_error("rates", "must be a list");
        if (static_cast<int>(doc["rates"].size()) != n)
            throw parse_error("rates", "need exactly " + std::to_string(n) + " entries");
        std::size_t j = 0;
        for (const auto& r : doc["rates"]) {
            std::string where = "rates[" + std::to_string(j) + "]";
            if (r.is_number_integer())
                rates.emplace_back(r.get<long long>());
            else if (r.is_number_float())
                rates.push_back(rational_from_double(r.get<double>()));
            else if (r.is_string())
                rates.push_back(parse_rate_token(r.get<std::string>(), where));
            else
                throw parse_error(where, "rate must be a number or string");
            ++j;
        }
    }
    return Graph(n, std::move(edges), std::move(rates));
}

inline Graph parse_graph_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, Rational>> rate_overrides;

    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "line " + std::to_string(lineno);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (n < 0) {
            try {
                n = std::stoi(tok);
            } catch (...) {
                throw parse_error(where, "expected vertex count, got '" + tok + "'");
            }
            if (n <= 0) throw parse_error(where, "vertex count must be positive");
            std::string extra;
            if (ls >> extra) throw parse_error(where, "unexpected token '" + extra + "'");
            continue;
        }

        if (tok == "rate") {
            int x;
            std::string val;
            if (!(ls >> x >> val)) throw parse_error(where, "expected 'rate <vertex> <value>'");
            if (x < 0 || x >= n) throw parse_error(where, "vertex id out of range");
            rate_overrides.emplace_back(x, parse_rate_token(val, where));
            continue;
        }

        int u, v;
        try {
            u = std::stoi(tok);
        } catch (...) {
            throw parse_error(where, "expected edge 'u v', got '" + tok + "'");
        }
        if (!(ls >> v)) throw parse_error(where, "edge needs two endpoints");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error(where, "vertex id out of range");
        edges.emplace_back(u, v);
        std::string extra;
        if (ls >> extra) throw parse_error(where, "unexpected token '" + extra + "'");
    }
    if (n < 0) throw parse_error("input", "empty graph document");

    std::vector<Rational> rates(static_cast<std::size_t>(n), Rational::one());
    for (auto& [x, r] : rate_overrides) rates[static_cast<std::size_t>(x)] = r;
    return Graph(n, std::move(edges), std::move(rates));
}

} // namespace detail

inline Graph parse_graph_text(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw parse_error("input", "empty graph document");
    if (text[first] == '{') return detail::parse_graph_json(text);
    return detail::parse_graph_edge_list(text);
}

} // namespace sep
