#include "svjmle/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "svjmle/errors.hpp"

namespace svjmle {

void JumpSpec::validate() const {
    if (intensity < 0.0) throw std::invalid_argument("jump intensity must be >= 0");
    switch (size_law) {
        case SizeLaw::None:
            break;
        case SizeLaw::Normal:
            if (!(normal_sd > 0.0)) throw std::invalid_argument("jump normal_sd must be > 0");
            break;
        case SizeLaw::OneSidedExponential:
            if (!(exp_rate > 0.0)) throw std::invalid_argument("jump exp_rate must be > 0");
            break;
        case SizeLaw::TwoSidedExponential:
            if (!(exp_rate_plus > 0.0) || !(exp_rate_minus > 0.0))
                throw std::invalid_argument("jump two-sided rates must be > 0");
            if (!(prob_plus >= 0.0 && prob_plus <= 1.0))
                throw std::invalid_argument("jump prob_plus must be in [0,1]");
            break;
    }
}

double JumpSpec::sample_size(Rng& rng) const {
    switch (size_law) {
        case SizeLaw::Normal:
            return normal_mean + normal_sd * rng.normal();
        case SizeLaw::OneSidedExponential:
            return rng.exponential(exp_rate);
        case SizeLaw::TwoSidedExponential:
            return rng.uniform() < prob_plus ? rng.exponential(exp_rate_plus)
                                             : -rng.exponential(exp_rate_minus);
        case SizeLaw::None:
            break;
    }
    return 0.0;
}

void ModelParams::validate() const {
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (-1,1)");
    if (!(y0 > 0.0)) throw std::invalid_argument("y0 must be > 0");
    if (!(s0 > 0.0)) throw std::invalid_argument("s0 must be > 0");
    if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
    jump.validate();
}

Regime ModelParams::regime(double rel_tol) const {
    const double product = theta * kappa;
    const double half_sigma2 = 0.5 * sigma * sigma;
    const double scale = std::max(product, half_sigma2);
    if (std::abs(product - half_sigma2) <= rel_tol * scale) return Regime::Critical;
    return product > half_sigma2 ? Regime::Subcritical : Regime::Invalid;
}

Vec3 h_map(const Psi& psi) {
    return {{psi.theta * psi.kappa, psi.kappa, psi.mu}};
}

Psi h_inverse(const Vec3& v) {
    if (v[1] == 0.0)
        throw SingularSecondCoordinate("h_inverse: second coordinate is zero");
    return {v[0] / v[1], v[1], v[2]};
}

double stationary_moment(const ModelParams& params, double k_exponent) {
    const double shape = 2.0 * params.theta * params.kappa / (params.sigma * params.sigma);
    const double rate = 2.0 * params.kappa / (params.sigma * params.sigma);
    if (k_exponent == 1.0) return params.theta;
    if (!(k_exponent > -shape))
        throw MomentUndefined("stationary_moment: K <= -2*theta*kappa/sigma^2, E(Y^K) = inf");
    return std::exp(std::lgamma(shape + k_exponent) - std::lgamma(shape) -
                    k_exponent * std::log(rate));
}

namespace {

void require_subcritical(const ModelParams& params, const char* where) {
    if (params.regime() != Regime::Subcritical)
        throw RegimeError(std::string(where) + ": requires the subcritical regime");
}

}  // namespace

Mat3 asym_cov_V(const ModelParams& params) {
    require_subcritical(params, "asym_cov_V");
    const double k = params.kappa, th = params.theta, s = params.sigma, r = params.rho;
    const double s2 = s * s;
    const double c = 2.0 * th * k - s2;
    const double pre = 1.0 / (2.0 * k * k * k);
    Mat3 v;
    v(0, 0) = pre * s2 * (2.0 * th * k - r * r * s2);
    v(0, 1) = v(1, 0) = pre * (-2.0 * (1.0 - r * r) * s2 * k * k);
    v(0, 2) = v(2, 0) = pre * (r * s * k * c);
    v(1, 1) = pre * (4.0 * k * k * k * k * (1.0 - r * r));
    v(1, 2) = v(2, 1) = 0.0;
    v(2, 2) = pre * (k * k * c);
    return v;
}

Mat3 asym_cov_V0(const ModelParams& params) {
    require_subcritical(params, "asym_cov_V0");
    const double k = params.kappa, th = params.theta, s = params.sigma, r = params.rho;
    const double s2 = s * s;
    const double c = 2.0 * th * k - s2;
    const double pre = c / (2.0 * k);
    Mat3 v;
    v(0, 0) = pre * (s2 + (1.0 - r * r) * c);
    v(0, 1) = v(1, 0) = pre * (2.0 * k * (1.0 - r * r));
    v(0, 2) = v(2, 0) = pre * (r * s);
    v(1, 1) = pre * (4.0 * k * k * (1.0 - r * r) / c);
    v(1, 2) = v(2, 1) = 0.0;
    v(2, 2) = pre;
    return v;
}

double sample_tau(Rng& rng) {
    double z = rng.normal();
    while (z == 0.0) z = rng.normal();
    return 1.0 / (z * z);
}

double sample_limit_mu_critical(const ModelParams& params, Rng& rng) {
    if (params.regime() != Regime::Critical)
        throw RegimeError("sample_limit_mu_critical: requires the critical regime");
    const double tau = sample_tau(rng);
    const double z2 = rng.normal();
    const double k = params.kappa, s = params.sigma, r = params.rho;
    return r * s / (k * tau) + s * std::sqrt(1.0 - r * r) / (k * std::sqrt(tau)) * z2;
}

double sample_limit_random_scaled_mu_critical(const ModelParams& params, Rng& rng) {
    if (params.regime() != Regime::Critical)
        throw RegimeError("sample_limit_random_scaled_mu_critical: requires the critical regime");
    const double tau = sample_tau(rng);
    const double z2 = rng.normal();
    const double r = params.rho;
    return r / tau + std::sqrt(1.0 - r * r) / std::sqrt(tau) * z2;
}

}  // namespace svjmle
