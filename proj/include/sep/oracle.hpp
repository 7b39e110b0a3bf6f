#pragma once

#include <cmath>
#include <limits>
#include <cstdint>
#include <queue>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "sep/enumeration.hpp"
#include "sep/graph.hpp"
#include "sep/occupancy.hpp"

namespace sep {

// Independent verification path: the exact generator of the process
// restricted to Lambda_K and a direct linear solve for its stationary
// vector, checked against the product form.

inline constexpr std::uint64_t kDefaultOracleCap = 20'000;

namespace detail {

template <class S>
S jump_rate(const Graph& g, int x) {
    // rho_x / deg(x)
    if constexpr (std::is_same_v<S, Rational>)
        return g.rates[static_cast<std::size_t>(x)] / Rational(g.degree[static_cast<std::size_t>(x)]);
    else
        return g.rate_value(x) / g.degree[static_cast<std::size_t>(x)];
}

inline bool adjacent(const Graph& g, int x, int y) {
    const auto& adj = g.adjacency[static_cast<std::size_t>(x)];
    return std::binary_search(adj.begin(), adj.end(), y);
}

} // namespace detail

// q(eta, xi): rho_x/deg(x) if xi is eta with the particle at x moved to an
// empty neighbor y, else zero (including xi = eta and non-adjacent swaps).
template <class S>
S transition_rate(const Graph& g, Config eta, Config xi) {
    std::uint64_t diff = eta.bits ^ xi.bits;
    if (std::popcount(diff) != 2) return S{};
    std::uint64_t from = eta.bits & diff;
    std::uint64_t to = xi.bits & diff;
    if (std::popcount(from) != 1 || std::popcount(to) != 1) return S{};
    int x = std::countr_zero(from);
    int y = std::countr_zero(to);
    if (!detail::adjacent(g, x, y)) return S{};
    return detail::jump_rate<S>(g, x);
}

// Dense generator over the canonical Lambda_K ordering. Row i holds the
// rates out of states[i]; diagonal entries make every row sum to zero.
template <class S>
struct GeneratorMatrix {
    int dim = 0;
    std::vector<Config> states;
    std::vector<S> entries;  // row-major, dim * dim

    S& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
    const S& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

template <class S>
GeneratorMatrix<S> build_generator(const Graph& g, int k,
                                   std::uint64_t cap = kDefaultOracleCap) {
    if (k < 0 || k > g.n)
        throw std::invalid_argument("build_generator: K must satisfy 0 <= K <= N");
    std::uint64_t size = binomial(g.n, k);
    if (size > cap) throw cap_exceeded(size, cap, "build_generator");

    GeneratorMatrix<S> q;
    q.dim = static_cast<int>(size);
    q.states.reserve(size);
    for (Config eta : enumerate_class(g.n, k)) q.states.push_back(eta);
    q.entries.assign(size * size, S{});

    for (int i = 0; i < q.dim; ++i) {
        Config eta = q.states[static_cast<std::size_t>(i)];
        S diag{};
        for (std::uint64_t b = eta.bits; b; b &= b - 1) {
            int x = std::countr_zero(b);
            S rate = detail::jump_rate<S>(g, x);
            for (int y : g.adjacency[static_cast<std::size_t>(x)]) {
                if (eta.test(y)) continue;  // blocked: no transition
                Config xi = swap_states(eta, x, y);
                int j = static_cast<int>(class_rank(xi));
                q.at(i, j) = rate;
                diag = diag + rate;
            }
        }
        q.at(i, i) = S{} - diag;
    }
    return q;
}

// Solves v Q = 0, sum(v) = 1 by a direct dense solve: one balance equation
// of Q^T is replaced by the normalization row. Residual is checked against
// the full generator afterwards.
inline std::vector<double> solve_stationary(const GeneratorMatrix<double>& q,
                                            double residual_tol = 1e-12) {
    int n = q.dim;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = q.at(j, i);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    a.row(0).setOnes();
    b(0) = 1.0;

    Eigen::VectorXd v = a.partialPivLu().solve(b);

    double residual = 0.0;
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(v(i))) residual = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += v(i) * q.at(i, j);
        residual = std::max(residual, std::abs(dot));
    }
    if (!std::isfinite(residual) || residual > residual_tol)
        throw error("stationary solve failed: residual " + std::to_string(residual) +
                    " (reducible chain or numerical breakdown)");
    return std::vector<double>(v.data(), v.data() + n);
}

inline GeneratorMatrix<double> to_double_generator(const GeneratorMatrix<Rational>& q) {
    GeneratorMatrix<double> d;
    d.dim = q.dim;
    d.states = q.states;
    d.entries.reserve(q.entries.size());
    for (const auto& e : q.entries) d.entries.push_back(e.to_double());
    return d;
}

// Detailed-balance residual of a distribution on Lambda_K over all ordered
// pairs joined by a move. S is Rational for the exact check (residual must
// be exactly zero for the product form) or double.
template <class S>
struct BalanceReport {
    S max_residual{};
    Config worst_from, worst_to;
    bool zero() const {
        if constexpr (std::is_same_v<S, Rational>)
            return max_residual == Rational(0);
        else
            return max_residual == 0.0;
    }
};

namespace detail {

template <class S, WeightScalar W>
S balance_mass(const W& m) {
    if constexpr (std::is_same_v<S, Rational>)
        return m;
    else
        return m.to_double();
}

inline Rational balance_abs(const Rational& r) { return r < Rational(0) ? Rational(0) - r : r; }
inline double balance_abs(double r) { return std::abs(r); }

} // namespace detail

template <class S, WeightScalar W>
BalanceReport<S> check_detailed_balance(const Graph& g, const StationaryDistribution<W>& dist) {
    BalanceReport<S> rep;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        Config eta = dist.support[i];
        S pi_eta = detail::balance_mass<S>(dist.mass[i]);
        for (std::uint64_t b = eta.bits; b; b &= b - 1) {
            int x = std::countr_zero(b);
            for (int y : g.adjacency[static_cast<std::size_t>(x)]) {
                if (eta.test(y)) continue;
                Config xi = swap_states(eta, x, y);
                S pi_xi = detail::balance_mass<S>(dist.mass[class_rank(xi)]);
                S forward = pi_eta * detail::jump_rate<S>(g, x);
                S backward = pi_xi * detail::jump_rate<S>(g, y);
                S residual = detail::balance_abs(forward - backward);
                if (rep.max_residual < residual) {
                    rep.max_residual = residual;
                    rep.worst_from = eta;
                    rep.worst_to = xi;
                }
            }
        }
    }
    return rep;
}

// Breadth-first search on the configuration graph (edges = positive-rate
// moves) from the canonical first configuration. True iff all C(N,K)
// configurations are reached; holds for every connected graph.
inline bool check_irreducibility(const Graph& g, int k,
                                 std::uint64_t cap = kDefaultOracleCap) {
    if (k < 0 || k > g.n)
        throw std::invalid_argument("check_irreducibility: K must satisfy 0 <= K <= N");
    std::uint64_t size = binomial(g.n, k);
    if (size > cap) throw cap_exceeded(size, cap, "check_irreducibility");
    if (size <= 1) return true;

    std::vector<char> visited(size, 0);
    std::queue<Config> frontier;
    Config first = *enumerate_class(g.n, k).begin();
    visited[class_rank(first)] = 1;
    frontier.push(first);
    std::uint64_t reached = 1;

    while (!frontier.empty()) {
        Config eta = frontier.front();
        frontier.pop();
        for (std::uint64_t b = eta.bits; b; b &= b - 1) {
            int x = std::countr_zero(b);
            for (int y : g.adjacency[static_cast<std::size_t>(x)]) {
                if (eta.test(y)) continue;
                Config xi = swap_states(eta, x, y);
                std::uint64_t r = class_rank(xi);
                if (!visited[r]) {
                    visited[r] = 1;
                    ++reached;
                    frontier.push(xi);
                }
            }
        }
    }
    return reached == size;
}

} // namespace sep
