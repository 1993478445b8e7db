#pragma once

#include <cmath>

namespace svjmle {

// Compensated (Kahan) accumulator. Long reductions (dt = 1e-4 over T = 300
// is 3e6 terms) must not lose digits, and the summation order is part of the
// reproducibility contract: always feed terms left to right.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014327;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace svjmle
