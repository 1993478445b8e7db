#pragma once

// Test-only oracles, independent of the library implementation paths they
// check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "svjmle/math.hpp"
#include "svjmle/rng.hpp"

namespace testsupport {

// Regularized lower incomplete gamma P(a, x) by series / continued fraction.
inline double reg_lower_gamma(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

// CDF of Gamma(shape, rate).
inline double gamma_cdf(double x, double shape, double rate) {
    return reg_lower_gamma(shape, rate * x);
}

// CDF of the level-1 Brownian first-passage time, by the reflection
// principle: P(tau <= t) = 2(1 - Phi(1/sqrt(t))).
inline double tau_cdf(double t) {
    if (t <= 0.0) return 0.0;
    return 2.0 * (1.0 - svjmle::normal_cdf(1.0 / std::sqrt(t)));
}

// Direct Brownian first-crossing time of +1 on a dt-grid, censored at t_max.
inline double brownian_first_crossing(svjmle::Rng& rng, double dt, double t_max) {
    const double sd = std::sqrt(dt);
    double w = 0.0;
    const std::int64_t max_steps = static_cast<std::int64_t>(t_max / dt);
    for (std::int64_t i = 1; i <= max_steps; ++i) {
        w += sd * rng.normal();
        if (w >= 1.0) return static_cast<double>(i) * dt;
    }
    return t_max;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace testsupport
