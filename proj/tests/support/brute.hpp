#pragma once

// Brute-force reference implementations for the test suite. Everything here
// recomputes results from raw graph data with its own small fraction type
// and plain 0..2^N mask loops, deliberately sharing no code with the library
// under test. Only suitable for small N.

#include <cassert>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace brute {

// exact fraction on long long, normalized with positive denominator
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        assert(den != 0);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    friend Frac operator+(const Frac& a, const Frac& b) {
        return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        return Frac(a.num * b.num, a.den * b.den);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        assert(b.num != 0);
        return Frac(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Frac& a, const Frac& b) {
        return a.num * b.den < b.num * a.den;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct TestGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<Frac> rates;  // empty means all ones

    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : edges) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
        }
        return deg;
    }

    Frac rate(int x) const {
        return rates.empty() ? Frac(1) : rates[static_cast<std::size_t>(x)];
    }
};

// D(z) = deg(z) / rho_z
inline Frac site_weight(const TestGraph& g, int z) {
    return Frac(g.degrees()[static_cast<std::size_t>(z)]) / g.rate(z);
}

// D(mask): product over occupied vertices
inline Frac mask_weight(const TestGraph& g, std::uint64_t mask) {
    Frac w(1);
    auto deg = g.degrees();
    for (int z = 0; z < g.n; ++z)
        if (mask >> z & 1) w = w * (Frac(deg[static_cast<std::size_t>(z)]) / g.rate(z));
    return w;
}

inline int popcount(std::uint64_t mask) {
    int c = 0;
    while (mask) {
        c += static_cast<int>(mask & 1);
        mask >>= 1;
    }
    return c;
}

// Sigma(Lambda_K): sum of D over all K-particle masks
inline Frac normalizer(const TestGraph& g, int k) {
    Frac sum(0);
    for (std::uint64_t mask = 0; mask < (1ULL << g.n); ++mask)
        if (popcount(mask) == k) sum = sum + mask_weight(g, mask);
    return sum;
}

// p_K(x) = Sigma(Lambda_K restricted to masks containing x) / Sigma(Lambda_K)
inline std::vector<Frac> profile(const TestGraph& g, int k) {
    std::vector<Frac> numer(static_cast<std::size_t>(g.n), Frac(0));
    Frac total(0);
    for (std::uint64_t mask = 0; mask < (1ULL << g.n); ++mask) {
        if (popcount(mask) != k) continue;
        Frac w = mask_weight(g, mask);
        total = total + w;
        for (int x = 0; x < g.n; ++x)
            if (mask >> x & 1)
                numer[static_cast<std::size_t>(x)] = numer[static_cast<std::size_t>(x)] + w;
    }
    std::vector<Frac> p;
    for (int x = 0; x < g.n; ++x) p.push_back(numer[static_cast<std::size_t>(x)] / total);
    return p;
}

// all K-particle masks in ascending integer order, by filtering
inline std::vector<std::uint64_t> masks_of_class(int n, int k) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask)
        if (popcount(mask) == k) out.push_back(mask);
    return out;
}

} // namespace brute
