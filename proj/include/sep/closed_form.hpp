#pragma once

#include "sep/occupancy.hpp"
#include "sep/rational.hpp"

namespace sep {

// Closed forms for unit-rate star and path graphs. Exact by construction,
// so they always return rational profiles; they take (N, K) only and build
// no graph.

namespace detail {

inline void require_family_range(int n, int k, int min_n, const char* what_for) {
    if (n < min_n)
        throw std::invalid_argument(std::string(what_for) + ": N must be at least " +
                                    std::to_string(min_n));
    if (k <= 0 || k > n)
        throw std::invalid_argument(std::string(what_for) + ": K must satisfy 0 < K <= N");
}

} // namespace detail

// Star with center 0 and N-1 leaves:
//   p_K(center) = (N-1)K / ((N-1)K + (N-K))
//   p_K(leaf)   = (K/(N-1)) * ((N-1)K - (K-1)) / ((N-1)K + (N-K))
inline OccupationProfile<Rational> star_profile(int n, int k) {
    detail::require_family_range(n, k, 2, "star_profile");
    Rational denom(static_cast<long long>(n - 1) * k + (n - k));
    Rational center = Rational(static_cast<long long>(n - 1) * k) / denom;
    Rational leaf = Rational(k, n - 1) *
                    (Rational(static_cast<long long>(n - 1) * k - (k - 1)) / denom);
    OccupationProfile<Rational> prof;
    prof.k = k;
    prof.p.assign(static_cast<std::size_t>(n), leaf);
    prof.p[0] = center;
    return prof;
}

// p_K(leaf) / p_K(center) = ((N-1)(K-1) + (N-K)) / (N-1)^2, linear in K.
inline Rational star_leaf_center_ratio(int n, int k) {
    detail::require_family_range(n, k, 2, "star_leaf_center_ratio");
    return Rational(static_cast<long long>(n - 1) * (k - 1) + (n - k),
                    static_cast<long long>(n - 1) * (n - 1));
}

// Path on vertices 0..N-1:
//   p_K(end)      = (2N-K-1)K / ((K-1)K + 4(N-K)(N-1))
//   p_K(interior) = (K/(N-2)) * ((K-2)(K-1) + 4(N-K)(N-2)) / ((K-1)K + 4(N-K)(N-1))
// For N = 2 both vertices are ends and the interior formula never applies.
inline OccupationProfile<Rational> path_profile(int n, int k) {
    detail::require_family_range(n, k, 2, "path_profile");
    Rational denom(static_cast<long long>(k - 1) * k +
                   4LL * (n - k) * (n - 1));
    Rational end = Rational(static_cast<long long>(2 * n - k - 1) * k) / denom;
    OccupationProfile<Rational> prof;
    prof.k = k;
    prof.p.assign(static_cast<std::size_t>(n), end);
    if (n >= 3) {
        Rational interior = Rational(k, n - 2) *
                            (Rational(static_cast<long long>(k - 2) * (k - 1) +
                                      4LL * (n - k) * (n - 2)) /
                             denom);
        for (int x = 1; x + 1 < n; ++x) prof.p[static_cast<std::size_t>(x)] = interior;
    }
    return prof;
}

// p_K(end) / p_K(interior) = (N-2)(2N-K-1) / ((K-2)(K-1) + 4(N-K)(N-2));
// one-half at K = 1, one at K = N.
inline Rational path_end_interior_ratio(int n, int k) {
    detail::require_family_range(n, k, 3, "path_end_interior_ratio");
    return Rational(static_cast<long long>(n - 2) * (2 * n - k - 1),
                    static_cast<long long>(k - 2) * (k - 1) + 4LL * (n - k) * (n - 2));
}

} // namespace sep
