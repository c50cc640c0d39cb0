#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mzproj {

// Neumaier-compensated accumulator: keeps the running error of each add in a
// separate carry term, so the result is accurate to ~1 ulp of the exact sum
// independent of length.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }
    void scale_pow2(int e) {  // exact: multiplies by 2^e
        sum_ = std::ldexp(sum_, e);
        carry_ = std::ldexp(carry_, e);
    }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// Running sum of squares with power-of-two rescaling so that intermediate
// arithmetic never overflows even when inputs reach ~1e200. All rescales are
// exact (ldexp), so no extra rounding is introduced on the common path where
// the scale exponent stays 0.
class ScaledSumSq {
public:
    void add(double x) {
        double ax = std::fabs(x);
        if (ax >= threshold_) {
            int e = std::ilogb(ax) - 480;
            acc_.scale_pow2(-2 * (e - log2_scale_));
            log2_scale_ = e;
            threshold_ = std::ldexp(1.0, log2_scale_ + 480);
        }
        double y = std::ldexp(ax, -log2_scale_);
        acc_.add(y * y);
    }
    // May round to +inf when the true sum exceeds the double range.
    double value() const { return std::ldexp(acc_.value(), 2 * log2_scale_); }
    // Finite whenever the sum is nonzero, even if value() saturates.
    double log_value() const {
        double v = acc_.value();
        if (v <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(v) + 2.0 * log2_scale_ * 0.6931471805599453094;
    }

private:
    NeumaierSum acc_;
    int log2_scale_ = 0;
    double threshold_ = std::ldexp(1.0, 480);
};

}  // namespace mzproj
