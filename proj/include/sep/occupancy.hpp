#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sep/enumeration.hpp"
#include "sep/graph.hpp"
#include "sep/weight.hpp"

namespace sep {

// Long-run per-vertex occupation probabilities for a fixed particle count.
template <WeightScalar W>
struct OccupationProfile {
    int k = 0;
    std::vector<W> p;  // p_K(x), indexed by vertex
};

namespace detail {

inline void require_k_range(const Graph& g, int k, const char* what_for) {
    // K = 0 is rejected everywhere occupation probabilities are defined.
    if (k <= 0 || k > g.n)
        throw std::invalid_argument(std::string(what_for) + ": K must satisfy 0 < K <= N");
}

// One pass over Lambda_K: accumulates Sigma(Lambda_K^+({x})) for every x and
// Sigma(Lambda_K) together.
template <WeightScalar W>
std::pair<std::vector<W>, W> occupancy_numerators(const Graph& g, int k, std::uint64_t cap) {
    check_enumeration_cap(g.n, k, cap, "occupation probabilities");
    std::vector<typename W::Accum> per_vertex(static_cast<std::size_t>(g.n));
    typename W::Accum total;
    for (Config eta : enumerate_class(g.n, k)) {
        W w = config_weight<W>(g, eta);
        total.add(w);
        for (std::uint64_t b = eta.bits; b; b &= b - 1)
            per_vertex[static_cast<std::size_t>(std::countr_zero(b))].add(w);
    }
    std::vector<W> nums;
    nums.reserve(static_cast<std::size_t>(g.n));
    for (auto& acc : per_vertex) nums.push_back(acc.total());
    return {std::move(nums), total.total()};
}

} // namespace detail

// p_K(x) = Sigma(Lambda_K^+(x)) / Sigma(Lambda_K)
template <WeightScalar W>
W occupation_probability(const Graph& g, int k, int x,
                         std::uint64_t cap = kDefaultEnumerationCap) {
    detail::require_k_range(g, k, "occupation_probability");
    if (x < 0 || x >= g.n) throw std::out_of_range("vertex id out of range");
    check_enumeration_cap(g.n, k, cap, "occupation_probability");
    typename W::Accum plus, total;
    for (Config eta : enumerate_class(g.n, k)) {
        W w = config_weight<W>(g, eta);
        total.add(w);
        if (eta.test(x)) plus.add(w);
    }
    return plus.total() / total.total();
}

template <WeightScalar W>
OccupationProfile<W> occupation_profile(const Graph& g, int k,
                                        std::uint64_t cap = kDefaultEnumerationCap) {
    detail::require_k_range(g, k, "occupation_profile");
    auto [nums, total] = detail::occupancy_numerators<W>(g, k, cap);
    OccupationProfile<W> prof;
    prof.k = k;
    prof.p.reserve(nums.size());
    for (const W& num : nums) prof.p.push_back(num / total);
    return prof;
}

// p_K(x)/p_K(y), computed as the ratio of the two class weights so the
// normalizer never enters.
template <WeightScalar W>
W occupation_ratio(const Graph& g, int k, int x, int y,
                   std::uint64_t cap = kDefaultEnumerationCap) {
    detail::require_k_range(g, k, "occupation_ratio");
    if (x < 0 || x >= g.n || y < 0 || y >= g.n)
        throw std::out_of_range("vertex id out of range");
    if (x == y) return W::one();
    check_enumeration_cap(g.n, k, cap, "occupation_ratio");
    typename W::Accum plus_x, plus_y;
    for (Config eta : enumerate_class(g.n, k)) {
        if (!eta.test(x) && !eta.test(y)) continue;
        W w = config_weight<W>(g, eta);
        if (eta.test(x)) plus_x.add(w);
        if (eta.test(y)) plus_y.add(w);
    }
    return plus_x.total() / plus_y.total();
}

// Sum of the profile equals K: exact in rational mode, within 1e-12 in
// log-domain mode.
template <WeightScalar W>
bool check_sum_rule(const OccupationProfile<W>& prof) {
    typename W::Accum acc;
    for (const W& p : prof.p) acc.add(p);
    if constexpr (std::is_same_v<W, Rational>)
        return acc.total() == Rational(prof.k);
    else
        return std::abs(acc.total().to_double() - prof.k) <= 1e-12;
}

// Ratio sequence r_K = p_K(x)/p_K(y) for one ordered pair with D(x) < D(y).
template <WeightScalar W>
struct PairRatioReport {
    int x = 0, y = 0;
    std::vector<W> ratios;        // K = 1..N
    bool endpoints_ok = false;    // r_1 = D(x)/D(y) and r_N = 1
    bool strictly_increasing = false;
    bool ok() const { return endpoints_ok && strictly_increasing; }
};

template <WeightScalar W>
struct MonotonicityReport {
    std::vector<PairRatioReport<W>> pairs;        // D(x) < D(y) strictly
    std::vector<std::pair<int, int>> equal_pairs; // D(x) = D(y), checked for equal profiles
    bool equal_profiles_ok = true;
    bool pass() const {
        if (!equal_profiles_ok) return false;
        for (const auto& pr : pairs)
            if (!pr.ok()) return false;
        return true;
    }
};

// Verifies, per ordered vertex pair with D(x) < D(y): r_1 = D(x)/D(y),
// strict increase of r_K over 1 <= K < N, r_N = 1; and equal profiles for
// pairs with D(x) = D(y).
template <WeightScalar W>
MonotonicityReport<W> check_pairwise_monotonicity(const Graph& g,
                                                  std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<std::vector<W>> numerators(static_cast<std::size_t>(g.n + 1));
    for (int k = 1; k <= g.n; ++k)
        numerators[static_cast<std::size_t>(k)] =
            detail::occupancy_numerators<W>(g, k, cap).first;

    std::vector<W> d;
    d.reserve(static_cast<std::size_t>(g.n));
    for (int x = 0; x < g.n; ++x) d.push_back(vertex_weight<W>(g, x));

    MonotonicityReport<W> rep;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            if (weights_equal(d[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(b)])) {
                rep.equal_pairs.emplace_back(a, b);
                for (int k = 1; k <= g.n; ++k) {
                    const auto& num = numerators[static_cast<std::size_t>(k)];
                    if (!weights_equal(num[static_cast<std::size_t>(a)],
                                       num[static_cast<std::size_t>(b)], 1e-12))
                        rep.equal_profiles_ok = false;
                }
                continue;
            }
            int x = a, y = b;
            if (strictly_less(d[static_cast<std::size_t>(b)], d[static_cast<std::size_t>(a)]))
                std::swap(x, y);

            PairRatioReport<W> pr;
            pr.x = x;
            pr.y = y;
            for (int k = 1; k <= g.n; ++k) {
                const auto& num = numerators[static_cast<std::size_t>(k)];
                pr.ratios.push_back(num[static_cast<std::size_t>(x)] /
                                    num[static_cast<std::size_t>(y)]);
            }
            W expected_first = d[static_cast<std::size_t>(x)] / d[static_cast<std::size_t>(y)];
            pr.endpoints_ok = weights_equal(pr.ratios.front(), expected_first, 1e-12) &&
                              weights_equal(pr.ratios.back(), W::one(), 1e-12);
            pr.strictly_increasing = true;
            for (int k = 0; k + 1 < g.n; ++k)
                if (!strictly_less(pr.ratios[static_cast<std::size_t>(k)],
                                   pr.ratios[static_cast<std::size_t>(k + 1)]))
                    pr.strictly_increasing = false;
            rep.pairs.push_back(std::move(pr));
        }
    return rep;
}

// Sigma(Lambda_{K+1}) Sigma(Lambda_{K-1}) < Sigma(Lambda_K)^2, per K.
template <WeightScalar W>
struct LogConcavityReport {
    struct Entry {
        int k;
        W lhs;  // Sigma(Lambda_{K+1}) * Sigma(Lambda_{K-1})
        W rhs;  // Sigma(Lambda_K)^2
        bool strict;
    };
    std::vector<Entry> entries;
    bool pass() const {
        for (const auto& e : entries)
            if (!e.strict) return false;
        return true;
    }
};

template <WeightScalar W>
LogConcavityReport<W> check_sigma_log_concavity(const Graph& g,
                                                std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<W> sigma;
    sigma.reserve(static_cast<std::size_t>(g.n + 1));
    for (int k = 0; k <= g.n; ++k) {
        check_enumeration_cap(g.n, k, cap, "log-concavity check");
        sigma.push_back(*class_weight<W>(g, enumerate_class(g.n, k)));
    }
    LogConcavityReport<W> rep;
    for (int k = 1; k < g.n; ++k) {
        typename LogConcavityReport<W>::Entry e{
            k,
            sigma[static_cast<std::size_t>(k + 1)] * sigma[static_cast<std::size_t>(k - 1)],
            sigma[static_cast<std::size_t>(k)] * sigma[static_cast<std::size_t>(k)],
            false};
        e.strict = strictly_less(e.lhs, e.rhs);
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

} // namespace sep
