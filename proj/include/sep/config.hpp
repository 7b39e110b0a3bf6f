#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "sep/error.hpp"

namespace sep {

// Hard limit for the exact-enumeration machinery: one machine word per
// configuration. The simulator has no such limit.
inline constexpr int kMaxExactVertices = 64;

// A particle configuration as the set of occupied vertices, bit x set iff
// vertex x is occupied.
struct Config {
    std::uint64_t bits = 0;

    constexpr Config() = default;
    constexpr explicit Config(std::uint64_t b) : bits(b) {}

    static Config from_vertices(std::initializer_list<int> vs) {
        Config c;
        for (int v : vs) c.bits |= std::uint64_t{1} << v;
        return c;
    }

    int count() const { return std::popcount(bits); }
    bool test(int v) const { return (bits >> v) & 1u; }
    Config with(int v) const { return Config(bits | (std::uint64_t{1} << v)); }
    Config without(int v) const { return Config(bits & ~(std::uint64_t{1} << v)); }
    bool empty() const { return bits == 0; }

    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    friend bool operator==(Config a, Config b) { return a.bits == b.bits; }
    friend bool operator!=(Config a, Config b) { return a.bits != b.bits; }
    friend bool operator<(Config a, Config b) { return a.bits < b.bits; }
};

// The exchange operator: swaps the occupation states of x and y. An
// involution, and a no-op when the two states agree.
inline Config swap_states(Config c, int x, int y) {
    if (x < 0 || x >= kMaxExactVertices || y < 0 || y >= kMaxExactVertices)
        throw std::out_of_range("swap_states: vertex id out of range");
    std::uint64_t bx = (c.bits >> x) & 1u;
    std::uint64_t by = (c.bits >> y) & 1u;
    if (bx == by) return c;
    return Config(c.bits ^ ((std::uint64_t{1} << x) | (std::uint64_t{1} << y)));
}

// C(n, k) lookup for n <= 64; every value fits in a uint64.
inline std::uint64_t binomial(int n, int k) {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 65>, 65> t{};
        for (int i = 0; i <= 64; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    if (n < 0 || n > 64 || k < 0 || k > n) return 0;
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Position of a K-subset in the ascending-integer order of all K-subsets of
// {0..n-1}: the combinatorial number system (colex) rank.
inline std::uint64_t class_rank(Config c) {
    std::uint64_t rank = 0;
    int i = 1;
    for (std::uint64_t b = c.bits; b; b &= b - 1, ++i)
        rank += binomial(std::countr_zero(b), i);
    return rank;
}

} // namespace sep
