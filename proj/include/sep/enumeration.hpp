#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "sep/config.hpp"
#include "sep/graph.hpp"
#include "sep/weight.hpp"

namespace sep {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

namespace detail {

// Next bit pattern with the same popcount, ascending. Never called on the
// last pattern of the sequence (count-based termination), so the ripple add
// cannot overflow.
inline std::uint64_t next_same_popcount(std::uint64_t v) {
    std::uint64_t lowest = v & (~v + 1);
    std::uint64_t ripple = v + lowest;
    std::uint64_t ones = v ^ ripple;
    ones = (ones >> 2) / lowest;
    return ripple | ones;
}

} // namespace detail

// The class of configurations with exactly K particles on N vertices, as a
// forward range in canonical order: ascending as integers under the bit-set
// encoding. O(1) memory, deterministic across runs and platforms.
class ConfigRange {
public:
    ConfigRange(int n, int k) : n_(n), k_(k) {
        if (n < 0 || n > kMaxExactVertices)
            throw std::invalid_argument("enumeration requires 0 <= N <= 64");
        if (k < 0 || k > n)
            throw std::invalid_argument("particle count must satisfy 0 <= K <= N");
    }

    std::uint64_t size() const { return binomial(n_, k_); }

    class iterator {
    public:
        using value_type = Config;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(std::uint64_t mask, std::uint64_t remaining)
            : mask_(mask), remaining_(remaining) {}

        Config operator*() const { return Config(mask_); }
        iterator& operator++() {
            --remaining_;
            if (remaining_ > 0) mask_ = detail::next_same_popcount(mask_);
            return *this;
        }
        iterator operator++(int) { auto t = *this; ++*this; return t; }
        friend bool operator==(const iterator& a, const iterator& b) {
            return a.remaining_ == b.remaining_;
        }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        std::uint64_t mask_ = 0;
        std::uint64_t remaining_ = 0;
    };

    iterator begin() const {
        std::uint64_t first = k_ == 0 ? 0 : (~std::uint64_t{0} >> (64 - k_));
        return iterator(first, size());
    }
    iterator end() const { return iterator(0, 0); }

private:
    int n_;
    int k_;
};

inline ConfigRange enumerate_class(int n, int k) { return ConfigRange(n, k); }

// Configurations of Lambda_K containing all of `include` and none of
// `exclude`. Enumerates (K - |include|)-subsets of the free vertices and
// scatters them between the pinned bits; the scatter preserves the
// ascending canonical order.
class ConstrainedRange {
public:
    ConstrainedRange(int n, int k, Config include, Config exclude)
        : include_(include) {
        if ((include.bits & exclude.bits) != 0)
            throw std::invalid_argument("include and exclude sets overlap");
        if (n < 0 || n > kMaxExactVertices)
            throw std::invalid_argument("enumeration requires 0 <= N <= 64");
        if (k < 0 || k > n)
            throw std::invalid_argument("particle count must satisfy 0 <= K <= N");
        for (int v = 0; v < n; ++v)
            if (!include.test(v) && !exclude.test(v)) free_positions_.push_back(v);
        free_k_ = k - include.count();
        empty_ = free_k_ < 0 || free_k_ > static_cast<int>(free_positions_.size());
    }

    std::uint64_t size() const {
        return empty_ ? 0 : binomial(static_cast<int>(free_positions_.size()), free_k_);
    }

    class iterator {
    public:
        using value_type = Config;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(ConfigRange::iterator it, const ConstrainedRange* parent)
            : it_(it), parent_(parent) {}

        Config operator*() const {
            Config sub = *it_;
            std::uint64_t bits = parent_->include_.bits;
            for (std::uint64_t b = sub.bits; b; b &= b - 1) {
                int pos = parent_->free_positions_[static_cast<std::size_t>(std::countr_zero(b))];
                bits |= std::uint64_t{1} << pos;
            }
            return Config(bits);
        }
        iterator& operator++() { ++it_; return *this; }
        iterator operator++(int) { auto t = *this; ++*this; return t; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.it_ == b.it_; }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        ConfigRange::iterator it_;
        const ConstrainedRange* parent_ = nullptr;
    };

    iterator begin() const {
        if (empty_) return end();
        ConfigRange sub(static_cast<int>(free_positions_.size()), free_k_);
        return iterator(sub.begin(), this);
    }
    iterator end() const { return iterator(ConfigRange::iterator(0, 0), this); }

private:
    Config include_;
    std::vector<int> free_positions_;
    int free_k_ = 0;
    bool empty_ = false;
};

inline ConstrainedRange enumerate_constrained(int n, int k, Config include,
                                              Config exclude = Config()) {
    return ConstrainedRange(n, k, include, exclude);
}

// Sigma(C) = sum of D(eta) over the class. An empty class has no weight at
// all rather than weight zero, hence the optional.
template <WeightScalar W, class Range>
std::optional<W> class_weight(const Graph& g, const Range& configs) {
    typename W::Accum acc;
    bool any = false;
    for (Config eta : configs) {
        acc.add(config_weight<W>(g, eta));
        any = true;
    }
    if (!any) return std::nullopt;
    return acc.total();
}

template <WeightScalar W>
struct StationaryDistribution {
    int k = 0;
    std::vector<Config> support;  // canonical order
    std::vector<W> mass;          // pi_K(eta) = D(eta) / Sigma(Lambda_K)
    W normalizer = W::zero();     // Sigma(Lambda_K)
};

inline void check_enumeration_cap(int n, int k, std::uint64_t cap, const char* what_for) {
    std::uint64_t size = binomial(n, k);
    if (size > cap) throw cap_exceeded(size, cap, what_for);
}

// The product-form law on Lambda_K.
template <WeightScalar W>
StationaryDistribution<W> stationary_measure(const Graph& g, int k,
                                             std::uint64_t cap = kDefaultEnumerationCap) {
    if (k <= 0 || k > g.n)
        throw std::invalid_argument("stationary_measure requires 0 < K <= N");
    check_enumeration_cap(g.n, k, cap, "stationary_measure");

    StationaryDistribution<W> dist;
    dist.k = k;
    typename W::Accum acc;
    for (Config eta : enumerate_class(g.n, k)) {
        W w = config_weight<W>(g, eta);
        dist.support.push_back(eta);
        dist.mass.push_back(w);
        acc.add(w);
    }
    dist.normalizer = acc.total();
    for (W& m : dist.mass) m = m / dist.normalizer;
    return dist;
}

} // namespace sep
