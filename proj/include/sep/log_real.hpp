#pragma once

#include <cmath>
#include <limits>

#include "sep/rational.hpp"

namespace sep {

// Positive real stored as its natural log. The scalability carrier: products
// of many vertex weights never overflow, sums go through a rescaled
// compensated accumulator.
class LogReal {
public:
    LogReal() : lg_(-std::numeric_limits<double>::infinity()) {}
    explicit LogReal(double lg) : lg_(lg) {}

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return LogReal(0.0); }
    static LogReal from_value(double v) { return LogReal(std::log(v)); }

    static LogReal vertex_weight(int degree, const Rational& rate) {
        return LogReal(std::log(static_cast<double>(degree)) - std::log(rate.to_double()));
    }

    double log() const { return lg_; }
    double to_double() const { return std::exp(lg_); }
    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }
    bool positive() const { return !is_zero(); }

    friend LogReal operator*(LogReal a, LogReal b) { return LogReal(a.lg_ + b.lg_); }
    friend LogReal operator/(LogReal a, LogReal b) { return LogReal(a.lg_ - b.lg_); }
    LogReal& operator*=(LogReal o) { lg_ += o.lg_; return *this; }

    // log-sum-exp of two terms; bulk sums should use Accum instead
    friend LogReal operator+(LogReal a, LogReal b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        double hi = a.lg_ > b.lg_ ? a.lg_ : b.lg_;
        double lo = a.lg_ > b.lg_ ? b.lg_ : a.lg_;
        return LogReal(hi + std::log1p(std::exp(lo - hi)));
    }
    LogReal& operator+=(LogReal o) { *this = *this + o; return *this; }

    friend bool operator==(LogReal a, LogReal b) { return a.lg_ == b.lg_; }
    friend bool operator<(LogReal a, LogReal b) { return a.lg_ < b.lg_; }
    friend bool operator>(LogReal a, LogReal b) { return a.lg_ > b.lg_; }

    // Streaming log-sum-exp: exponentials relative to the running max are
    // Kahan-compensated, and the partial sum is rescaled whenever a new
    // maximum arrives.
    struct Accum {
        double max_lg = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        double comp = 0.0;

        void add(LogReal w) {
            if (w.is_zero()) return;
            if (w.lg_ > max_lg) {
                if (sum > 0.0) {
                    double scale = std::exp(max_lg - w.lg_);
                    sum *= scale;
                    comp *= scale;
                }
                max_lg = w.lg_;
            }
            double term = std::exp(w.lg_ - max_lg);
            double t = sum + term;
            if (std::abs(sum) >= std::abs(term))
                comp += (sum - t) + term;
            else
                comp += (term - t) + sum;
            sum = t;
        }

        LogReal total() const {
            double s = sum + comp;
            if (s <= 0.0) return LogReal::zero();
            return LogReal(max_lg + std::log(s));
        }
    };

private:
    double lg_;
};

} // namespace sep
