#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sep/error.hpp"

namespace sep {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Thin wrapper over boost's cpp_rational so the
// exact and log-domain carriers expose the same surface to the templated
// algorithms (one(), zero(), Accum, to_double, ...).
class Rational {
public:
    using backend = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(long long v) : v_(v) {}
    Rational(long long num, long long den) : v_(BigInt(num), BigInt(den)) {}
    explicit Rational(backend v) : v_(std::move(v)) {}

    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }

    // weight of a vertex: degree / rate
    static Rational vertex_weight(int degree, const Rational& rate) {
        return Rational(degree) / rate;
    }

    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) { return Rational(a.v_ / b.v_); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool positive() const { return v_ > 0; }

    double to_double() const { return v_.convert_to<double>(); }

    // "p/q", or just "p" when the denominator is one.
    std::string str() const {
        BigInt num = boost::multiprecision::numerator(v_);
        BigInt den = boost::multiprecision::denominator(v_);
        std::string s = num.str();
        if (den != 1) s += "/" + den.str();
        return s;
    }

    const backend& value() const { return v_; }

    // Streaming exact sum; the counterpart of LogReal::Accum. Order of
    // addition never changes the result here.
    struct Accum {
        backend total_;
        void add(const Rational& w) { total_ += w.v_; }
        Rational total() const { return Rational(total_); }
    };

private:
    backend v_;
};

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// cpp_int's string constructor treats a leading zero as an octal prefix;
// strip it so "025" means twenty-five.
inline BigInt digits_to_int(std::string_view s) {
    auto nz = s.find_first_not_of('0');
    if (nz == std::string_view::npos) return BigInt(0);
    return BigInt(std::string(s.substr(nz)));
}

} // namespace detail

// Parses "p/q", "-3", "2.5", "1e-3", "0.25e2" into an exact rational: a
// decimal literal denotes its decimal value, so "0.1" is exactly 1/10.
// Returns nullopt on anything else.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        bool neg = false;
        if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
            neg = num[0] == '-';
            num.remove_prefix(1);
        }
        if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
        BigInt p = detail::digits_to_int(num);
        BigInt q = detail::digits_to_int(den);
        if (q == 0) return std::nullopt;
        if (neg) p = -p;
        return Rational(Rational::backend(p, q));
    }

    // [sign] digits [. digits] [eE [sign] digits]
    std::string_view s = text;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    long long frac_len = 0;
    long long exponent = 0;
    auto epos = s.find_first_of("eE");
    std::string_view mantissa = s.substr(0, epos);
    if (epos != std::string_view::npos) {
        std::string_view expo = s.substr(epos + 1);
        bool eneg = false;
        if (!expo.empty() && (expo[0] == '-' || expo[0] == '+')) {
            eneg = expo[0] == '-';
            expo.remove_prefix(1);
        }
        if (!detail::all_digits(expo) || expo.size() > 6) return std::nullopt;
        auto [p, ec] = std::from_chars(expo.data(), expo.data() + expo.size(), exponent);
        if (ec != std::errc{} || p != expo.data() + expo.size()) return std::nullopt;
        if (eneg) exponent = -exponent;
    }
    auto dot = mantissa.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = mantissa.substr(0, dot);
        std::string_view fp = mantissa.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if (!ip.empty() && !detail::all_digits(ip)) return std::nullopt;
        if (!fp.empty() && !detail::all_digits(fp)) return std::nullopt;
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long long>(fp.size());
    } else {
        if (!detail::all_digits(mantissa)) return std::nullopt;
        digits = std::string(mantissa);
    }
    if (digits.empty()) return std::nullopt;

    BigInt p = detail::digits_to_int(digits);
    if (neg) p = -p;
    long long net = exponent - frac_len;
    BigInt pow10 = 1;
    for (long long i = 0; i < (net < 0 ? -net : net); ++i) pow10 *= 10;
    if (net >= 0) return Rational(Rational::backend(p * pow10, BigInt(1)));
    return Rational(Rational::backend(p, pow10));
}

// Exact rational from a double through its shortest round-trip decimal
// form, so 0.5 -> 1/2 and 0.1 -> 1/10 rather than the binary expansion.
inline Rational rational_from_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw error("cannot convert double to rational");
    auto r = parse_rational(std::string_view(buf, p - buf));
    if (!r) throw error("cannot convert double to rational: " + std::string(buf, p));
    return *r;
}

} // namespace sep
