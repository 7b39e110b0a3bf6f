#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "sep/log_real.hpp"
#include "sep/rational.hpp"

namespace sep {

enum class WeightMode { rational, log_domain };

inline const char* to_string(WeightMode m) {
    return m == WeightMode::rational ? "rational" : "log";
}

template <class W>
concept WeightScalar = requires(W a, W b, typename W::Accum acc) {
    { W::zero() } -> std::same_as<W>;
    { W::one() } -> std::same_as<W>;
    { a * b } -> std::same_as<W>;
    { a / b } -> std::same_as<W>;
    { a.to_double() } -> std::same_as<double>;
    { a.is_zero() } -> std::same_as<bool>;
    acc.add(a);
    { acc.total() } -> std::same_as<W>;
};

// Strict a < b. Exact for rationals; in log mode a rounding slack of 1e-9
// relative keeps true-but-tight inequalities from failing.
inline bool strictly_less(const Rational& a, const Rational& b) { return a < b; }
inline bool strictly_less(LogReal a, LogReal b) {
    if (a.is_zero()) return !b.is_zero();
    return a.log() < b.log() + 1e-9;
}

inline bool weights_equal(const Rational& a, const Rational& b, double = 0.0) { return a == b; }
inline bool weights_equal(LogReal a, LogReal b, double tol = 1e-9) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return std::abs(a.log() - b.log()) <= tol;
}

} // namespace sep
