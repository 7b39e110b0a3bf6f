#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sep/graph.hpp"
#include "sep/rng.hpp"

namespace sep {

// Event-driven (Gillespie) simulation of the exclusion process. One global
// clock: waiting times are Exp(R) with R the total jump rate of the
// occupied vertices, the jumping particle is chosen proportionally to its
// rate, the target neighbor uniformly, and blocked attempts consume time
// but change nothing. This attempt scheme realizes exactly the generator
// rates rho_x/deg(x) per empty neighbor.
//
// No 64-vertex limit here; occupancy is kept in plain arrays.

namespace detail {

// prefix-sum tree over the rates of the occupied-particle list, so particle
// selection and rate updates stay O(log K) per event
class RateTree {
public:
    void build(const std::vector<double>& rates) {
        n_ = rates.size();
        tree_.assign(n_ + 1, 0.0);
        values_ = rates;
        for (std::size_t i = 1; i <= n_; ++i) {
            tree_[i] += rates[i - 1];
            std::size_t parent = i + (i & (~i + 1));
            if (parent <= n_) tree_[parent] += tree_[i];
        }
    }

    void set(std::size_t idx, double value) {
        double delta = value - values_[idx];
        values_[idx] = value;
        for (std::size_t i = idx + 1; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
    }

    double total() const {
        double s = 0.0;
        for (std::size_t i = n_; i > 0; i &= i - 1) s += tree_[i];
        return s;
    }

    // smallest index whose prefix sum exceeds target
    std::size_t find(double target) const {
        std::size_t pos = 0;
        std::size_t step = std::bit_floor(n_);
        for (; step > 0; step >>= 1)
            if (pos + step <= n_ && tree_[pos + step] <= target) {
                pos += step;
                target -= tree_[pos];
            }
        return pos < n_ ? pos : n_ - 1;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> tree_;
    std::vector<double> values_;
};

struct KahanAcc {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace detail

enum class Placement { lowest_index, seeded_random };

struct SimState {
    const Graph* graph = nullptr;
    int k = 0;
    std::vector<std::uint8_t> occupied;        // 0/1 per vertex
    std::vector<int> particles;                // occupied vertices, one slot per particle
    std::vector<int> slot_of;                  // vertex -> slot, or -1
    std::vector<detail::KahanAcc> occupied_time;
    detail::KahanAcc elapsed;
    std::uint64_t attempts = 0;                // includes blocked
    double burn_in = 0.0;
    Xoshiro256pp rng{0};
    detail::RateTree rates;

    int occupant_count() const { return k; }
    double total_rate() const { return rates.total(); }
};

inline SimState init_state(const Graph& g, int k, Placement placement,
                           std::uint64_t rng_seed) {
    if (k <= 0 || k > g.n)
        throw std::invalid_argument("init_state: K must satisfy 0 < K <= N");
    SimState s;
    s.graph = &g;
    s.k = k;
    s.rng = Xoshiro256pp(rng_seed);
    s.occupied.assign(static_cast<std::size_t>(g.n), 0);
    s.slot_of.assign(static_cast<std::size_t>(g.n), -1);
    s.occupied_time.assign(static_cast<std::size_t>(g.n), {});

    if (placement == Placement::lowest_index) {
        for (int v = 0; v < k; ++v) s.particles.push_back(v);
    } else {
        // partial Fisher-Yates over the vertex ids
        std::vector<int> pool(static_cast<std::size_t>(g.n));
        for (int v = 0; v < g.n; ++v) pool[static_cast<std::size_t>(v)] = v;
        for (int i = 0; i < k; ++i) {
            auto j = i + static_cast<int>(s.rng.below(static_cast<std::uint32_t>(g.n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            s.particles.push_back(pool[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<double> slot_rates;
    for (int i = 0; i < k; ++i) {
        int v = s.particles[static_cast<std::size_t>(i)];
        s.occupied[static_cast<std::size_t>(v)] = 1;
        s.slot_of[static_cast<std::size_t>(v)] = i;
        slot_rates.push_back(g.rate_value(v));
    }
    s.rates.build(slot_rates);
    return s;
}

namespace detail {

inline void credit(SimState& s, double dt) {
    for (int v : s.particles) s.occupied_time[static_cast<std::size_t>(v)].add(dt);
    s.elapsed.add(dt);
}

// One attempt: pick the particle by rate, a neighbor uniformly, move iff
// the neighbor is empty.
inline void attempt_move(SimState& s) {
    const Graph& g = *s.graph;
    ++s.attempts;
    double r = s.rates.total();
    std::size_t slot = s.rates.find(s.rng.uniform() * r);
    int x = s.particles[slot];
    const auto& neighbors = g.adjacency[static_cast<std::size_t>(x)];
    int y = neighbors[s.rng.below(static_cast<std::uint32_t>(neighbors.size()))];
    if (s.occupied[static_cast<std::size_t>(y)]) return;  // blocked

    s.occupied[static_cast<std::size_t>(x)] = 0;
    s.occupied[static_cast<std::size_t>(y)] = 1;
    s.slot_of[static_cast<std::size_t>(x)] = -1;
    s.slot_of[static_cast<std::size_t>(y)] = static_cast<int>(slot);
    s.particles[slot] = y;
    s.rates.set(slot, g.rate_value(y));
}

} // namespace detail

// One event: waiting time, time credit to every occupied vertex, then the
// attempt (possibly blocked; if K = N every attempt is blocked and only
// time advances).
inline void step(SimState& s) {
    double dt = s.rng.exponential(s.rates.total());
    detail::credit(s, dt);
    detail::attempt_move(s);
}

struct SimulationEstimate {
    int n = 0;
    int k = 0;
    double horizon = 0.0;
    double burn_in = 0.0;
    double window = 0.0;  // pooled post-burn-in time across replicas
    std::uint64_t seed = 0;
    std::uint64_t attempts = 0;
    std::uint64_t graph_fingerprint = 0;
    std::vector<double> occupied_time;  // post-burn-in, per vertex
    std::vector<double> p_hat;
    std::vector<double> std_error;      // batch-means proxy
    std::vector<double> se2_weighted;   // sum of window^2 * SE^2 terms, for pooling
};

inline constexpr int kStdErrorBatches = 100;

namespace detail {

inline std::uint64_t fingerprint(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(g.n));
    for (auto [u, v] : g.edges) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    for (const auto& r : g.rates)
        for (char c : r.str()) mix(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return h;
}

} // namespace detail

// Runs one trajectory to the horizon and estimates p_K(x) by the fraction
// of post-burn-in time each vertex is occupied. The standard-error proxy
// splits the window into 100 equal time batches. Identical inputs give
// bit-identical estimates.
inline SimulationEstimate run(const Graph& g, int k, double horizon, std::uint64_t seed,
                              double burn_in = -1.0,
                              Placement placement = Placement::lowest_index) {
    if (!(horizon > 0.0)) throw std::invalid_argument("run: horizon must be positive");
    if (burn_in < 0.0) burn_in = 0.01 * horizon;  // default: 1% of the horizon
    if (!(burn_in < horizon)) throw std::invalid_argument("run: burn-in must be below horizon");

    SimulationEstimate est;
    est.n = g.n;
    est.k = k;
    est.horizon = horizon;
    est.burn_in = burn_in;
    est.window = horizon - burn_in;
    est.seed = seed;
    est.graph_fingerprint = detail::fingerprint(g);
    est.occupied_time.assign(static_cast<std::size_t>(g.n), 0.0);
    est.p_hat.assign(static_cast<std::size_t>(g.n), 0.0);
    est.std_error.assign(static_cast<std::size_t>(g.n), 0.0);
    est.se2_weighted.assign(static_cast<std::size_t>(g.n), 0.0);

    if (k == g.n) {
        // full graph: the configuration can never change
        for (int v = 0; v < g.n; ++v) {
            est.occupied_time[static_cast<std::size_t>(v)] = est.window;
            est.p_hat[static_cast<std::size_t>(v)] = 1.0;
        }
        return est;
    }

    SimState s = init_state(g, k, placement, seed);
    s.burn_in = burn_in;

    const double batch_len = est.window / kStdErrorBatches;
    std::vector<double> batch_occ(static_cast<std::size_t>(kStdErrorBatches) *
                                      static_cast<std::size_t>(g.n),
                                  0.0);
    std::vector<detail::KahanAcc> window_occ(static_cast<std::size_t>(g.n));

    // right edge of the region the clock is currently in; batch -1 is the
    // burn-in period, batch 99 ends exactly at the horizon
    auto edge = [&](int batch) {
        if (batch < 0) return burn_in;
        if (batch + 1 == kStdErrorBatches) return horizon;
        return burn_in + (batch + 1) * batch_len;
    };

    double t = 0.0;
    int cur_batch = -1;
    while (t < horizon) {
        double t_event = t + s.rng.exponential(s.rates.total());
        double stop = std::min(t_event, horizon);
        // split the waiting interval at the burn-in cutoff, batch edges and
        // the horizon. The clock only moves by assignment to a boundary, and
        // each credited segment is the difference of adjacent boundaries
        // (exact for short segments), so the occupied times telescope: their
        // sum is K * (horizon - burn_in) up to accumulator ulps.
        while (t < stop) {
            while (cur_batch + 1 < kStdErrorBatches && t >= edge(cur_batch)) ++cur_batch;
            double bound = std::min(stop, edge(cur_batch));
            double seg = bound - t;
            for (int v : s.particles) {
                s.occupied_time[static_cast<std::size_t>(v)].add(seg);
                if (cur_batch >= 0) {
                    window_occ[static_cast<std::size_t>(v)].add(seg);
                    batch_occ[static_cast<std::size_t>(cur_batch) *
                                  static_cast<std::size_t>(g.n) +
                              static_cast<std::size_t>(v)] += seg;
                }
            }
            s.elapsed.add(seg);
            t = bound;
        }
        if (t_event >= horizon) break;
        detail::attempt_move(s);
    }

    est.attempts = s.attempts;
    for (int v = 0; v < g.n; ++v) {
        double occ = window_occ[static_cast<std::size_t>(v)].value();
        est.occupied_time[static_cast<std::size_t>(v)] = occ;
        est.p_hat[static_cast<std::size_t>(v)] = occ / est.window;
    }
    for (int v = 0; v < g.n; ++v) {
        double mean = est.p_hat[static_cast<std::size_t>(v)];
        double var = 0.0;
        for (int b = 0; b < kStdErrorBatches; ++b) {
            double frac = batch_occ[static_cast<std::size_t>(b) * static_cast<std::size_t>(g.n) +
                                    static_cast<std::size_t>(v)] /
                          batch_len;
            var += (frac - mean) * (frac - mean);
        }
        var /= kStdErrorBatches * (kStdErrorBatches - 1.0);
        double se = std::sqrt(var);
        est.std_error[static_cast<std::size_t>(v)] = se;
        est.se2_weighted[static_cast<std::size_t>(v)] = est.window * est.window * se * se;
    }
    return est;
}

// Time-weighted pooling of replica estimates. Associative and
// order-independent up to floating-point roundoff.
inline SimulationEstimate merge(const std::vector<SimulationEstimate>& estimates) {
    if (estimates.empty()) throw std::invalid_argument("merge: no estimates");
    SimulationEstimate out = estimates.front();
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        const auto& e = estimates[i];
        if (e.n != out.n || e.k != out.k || e.graph_fingerprint != out.graph_fingerprint)
            throw std::invalid_argument("merge: estimates disagree on graph or K");
        out.window += e.window;
        out.horizon += e.horizon;
        out.attempts += e.attempts;
        for (int v = 0; v < out.n; ++v) {
            out.occupied_time[static_cast<std::size_t>(v)] +=
                e.occupied_time[static_cast<std::size_t>(v)];
            out.se2_weighted[static_cast<std::size_t>(v)] +=
                e.se2_weighted[static_cast<std::size_t>(v)];
        }
    }
    for (int v = 0; v < out.n; ++v) {
        out.p_hat[static_cast<std::size_t>(v)] =
            out.occupied_time[static_cast<std::size_t>(v)] / out.window;
        out.std_error[static_cast<std::size_t>(v)] =
            std::sqrt(out.se2_weighted[static_cast<std::size_t>(v)]) / out.window;
    }
    return out;
}

} // namespace sep
