#pragma once

#include <cmath>
#include <cstdint>

namespace sep {

// Seeding and stream derivation. Streams for replicas or per-K runs are
// derived by advancing a splitmix64 sequence, never from ambient entropy;
// the manifest records the scheme so runs are reproducible anywhere.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t index) {
    SplitMix64 s(base_seed);
    for (std::uint64_t i = 0; i <= index; ++i) s.next();
    return s.state ^ s.next();
}

// xoshiro256++ (Blackman & Vigna), state initialized through splitmix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exp(rate)
    double exponential(double rate) {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return -std::log(u) / rate;
    }

    // unbiased integer in [0, bound) by bitmask rejection
    std::uint32_t below(std::uint32_t bound) {
        if (bound <= 1) return 0;
        std::uint32_t mask = ~std::uint32_t{0} >> std::countl_zero(bound - 1);
        for (;;) {
            std::uint32_t v = static_cast<std::uint32_t>(next()) & mask;
            if (v < bound) return v;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

inline constexpr const char* kRngAlgorithm = "xoshiro256++";
inline constexpr const char* kRngSeeding = "splitmix64(seed); streams by splitmix64 skip";

} // namespace sep
