#include "svjmle/estimator.hpp"

#include <cmath>

#include "svjmle/errors.hpp"

namespace svjmle {

namespace {

void require_valid(const SuffStats& stats, const char* where) {
    if (stats.degenerate())
        throw DegenerateStats(std::string(where) + ": i1*i2 <= T^2 (constant-path degeneracy)");
}

}  // namespace

InformationMatrix build_G(const SuffStats& stats, double sigma, double rho) {
    require_valid(stats, "build_G");
    const double pre = 1.0 / ((1.0 - rho * rho) * sigma * sigma);
    const double t = stats.horizon;
    Mat3 g;
    g(0, 0) = pre * stats.i2;
    g(0, 1) = g(1, 0) = pre * (-t);
    g(0, 2) = g(2, 0) = pre * (-rho * sigma * stats.i2);
    g(1, 1) = pre * stats.i1;
    g(1, 2) = g(2, 1) = pre * (rho * sigma * t);
    g(2, 2) = pre * (sigma * sigma * stats.i2);
    return {g, t, sigma, rho};
}

ScoreVector build_f(const SuffStats& stats, double sigma, double rho) {
    const double pre = 1.0 / ((1.0 - rho * rho) * sigma * sigma);
    const double dy = stats.y_terminal - stats.y_initial;
    Vec3 f;
    f[0] = pre * (stats.i3 - rho * sigma * stats.i5);
    f[1] = pre * (-dy + rho * sigma * stats.i4);
    f[2] = pre * (-rho * sigma * stats.i3 + sigma * sigma * stats.i5);
    return {f};
}

Mat3 g_inverse_closed_form(const InformationMatrix& g, const SuffStats& stats) {
    require_valid(stats, "g_inverse_closed_form");
    const double i1 = stats.i1, i2 = stats.i2, t = g.horizon;
    const double s = g.sigma, r = g.rho;
    const double gap = i1 * i2 - t * t;
    const double pre = 1.0 / (gap * i2);
    Mat3 inv;
    inv(0, 0) = pre * (s * s * i1 * i2 - r * r * s * s * t * t);
    inv(0, 1) = inv(1, 0) = pre * ((1.0 - r * r) * s * s * t * i2);
    inv(0, 2) = inv(2, 0) = pre * (r * s * gap);
    inv(1, 1) = pre * ((1.0 - r * r) * s * s * i2 * i2);
    inv(1, 2) = inv(2, 1) = 0.0;
    inv(2, 2) = pre * gap;
    return inv;
}

MleEstimate mle(const SuffStats& stats, double sigma, double rho, MleRoute route) {
    require_valid(stats, "mle");
    MleEstimate est;
    est.g = build_G(stats, sigma, rho);
    est.f = build_f(stats, sigma, rho);
    est.route = route;

    const double i1 = stats.i1, i2 = stats.i2, i3 = stats.i3, i4 = stats.i4, i5 = stats.i5;
    const double t = stats.horizon;
    const double dy = stats.y_terminal - stats.y_initial;
    const double rs = rho * sigma;

    // kappa-hat numerator; theta-hat divides by it, so a vanishing value is
    // the almost-surely-null event the reparameterization cannot invert.
    const double kappa_num = t * i3 - i2 * dy + rs * i2 * i4 - rs * t * i5;
    const double scale = std::max({std::abs(t * i3), std::abs(i2 * dy),
                                   std::abs(rs * i2 * i4), std::abs(rs * t * i5)});
    if (std::abs(kappa_num) < 1e-14 * scale)
        throw SingularSecondCoordinate("mle: kappa-hat numerator vanished");

    if (route == MleRoute::Matrix) {
        const Mat3 ginv = g_inverse_closed_form(est.g, stats);
        const Vec3 v = ginv * est.f.f;
        est.psi_hat = h_inverse(v);
    } else {
        const double gap = i1 * i2 - t * t;
        const double kappa_hat = kappa_num / gap;
        const double theta_num = i1 * i2 * i3 - t * i2 * dy + rs * t * i2 * i4 - rs * t * t * i5;
        const double theta_hat = theta_num / (i2 * kappa_num);
        const double mu_hat = i5 / i2;
        est.psi_hat = {theta_hat, kappa_hat, mu_hat};
    }
    est.inside_psi = est.psi_hat.theta > 0.0 && est.psi_hat.kappa > 0.0 &&
                     std::isfinite(est.psi_hat.mu);
    return est;
}

double log_likelihood_ratio(const Psi& psi, const Psi& psi_ref, const ScoreVector& f,
                            const InformationMatrix& g) {
    const Vec3 d = h_map(psi) - h_map(psi_ref);
    const Vec3 sum = h_map(psi) + h_map(psi_ref);
    return d.dot(f.f) - 0.5 * d.dot(g.g * sum);
}

Vec3 score(const Psi& psi, const ScoreVector& f, const InformationMatrix& g) {
    const Vec3 resid = f.f - g.g * h_map(psi);
    // J(psi)^T with J = [[kappa, theta, 0], [0,1,0], [0,0,1]].
    Vec3 out;
    out[0] = psi.kappa * resid[0];
    out[1] = psi.theta * resid[0] + resid[1];
    out[2] = resid[2];
    return out;
}

RandomScaling random_scaling(const SuffStats& stats, double sigma, double rho) {
    require_valid(stats, "random_scaling");
    const double i1 = stats.i1, i2 = stats.i2, t = stats.horizon;
    const double rho_c = std::sqrt(1.0 - rho * rho);
    const double pre = 1.0 / (sigma * rho_c * std::sqrt(i2));

    Mat3 r;
    r(0, 0) = pre * i2;
    r(0, 1) = pre * (-t);
    r(0, 2) = pre * (-rho * sigma * i2);
    r(1, 1) = pre * std::sqrt(i1 * i2 - t * t);
    r(2, 2) = pre * sigma * rho_c * i2;

    Mat3 q = Mat3::identity();
    q(0, 0) = (0.5 * sigma * sigma / t) * i2 / ((i1 / t) * (i2 / t) - 1.0);
    q(0, 1) = i1 / t;
    return {r, q};
}

ScaledErrors scaled_errors(const MleEstimate& est, const Psi& truth, const SuffStats& stats,
                           Regime regime) {
    if (regime == Regime::Invalid)
        throw RegimeError("scaled_errors: invalid regime (theta*kappa < sigma^2/2)");

    const double t = stats.horizon;
    const double s = est.g.sigma, r = est.g.rho;
    const double th = truth.theta, k = truth.kappa;
    const double d_theta = est.psi_hat.theta - truth.theta;
    const double d_kappa = est.psi_hat.kappa - truth.kappa;
    const double d_mu = est.psi_hat.mu - truth.mu;

    ScaledErrors out;
    if (regime == Regime::Subcritical) {
        out.deterministic[0] =
            std::sqrt(2.0 * k * k * k * t / (s * s * (2.0 * th * k - r * r * s * s))) * d_theta;
        out.deterministic[1] = std::sqrt(t / (2.0 * k * (1.0 - r * r))) * d_kappa;
        out.deterministic[2] = std::sqrt(2.0 * k * t / (2.0 * th * k - s * s)) * d_mu;

        const RandomScaling rs = random_scaling(stats, s, r);
        const Vec3 diff{{d_theta, d_kappa, d_mu}};
        out.random_scaled = rs.r * (rs.q * diff);
    } else {
        const double s4 = s * s * s * s;
        out.deterministic[0] =
            std::sqrt(2.0 * k * k * k * t / (s4 * (1.0 - r * r))) * d_theta;
        out.deterministic[1] = std::sqrt(t / (2.0 * k * (1.0 - r * r))) * d_kappa;
        out.deterministic[2] = t * d_mu;

        const double rho_c = std::sqrt(1.0 - r * r);
        out.random_scaled[0] = s * t * t / (2.0 * rho_c * std::pow(stats.i1, 1.5)) * d_theta;
        out.random_scaled[1] = std::sqrt(stats.i1) / (s * rho_c) * d_kappa;
        out.random_scaled[2] = s * t * t / (2.0 * stats.i1) * d_mu;
    }
    return out;
}

}  // namespace svjmle
