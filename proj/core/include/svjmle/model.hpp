#pragma once

#include <optional>

#include "svjmle/linalg.hpp"
#include "svjmle/rng.hpp"

namespace svjmle {

// Law of the log-price jump sizes J. All laws are continuous, so there is
// never an atom at zero.
struct JumpSpec {
    enum class SizeLaw { None, Normal, OneSidedExponential, TwoSidedExponential };

    double intensity = 1.0;
    SizeLaw size_law = SizeLaw::Normal;

    double normal_mean = 0.0;
    double normal_sd = 0.1;
    double exp_rate = 10.0;            // one-sided
    double exp_rate_plus = 10.0;       // two-sided
    double exp_rate_minus = 10.0;
    double prob_plus = 0.5;

    void validate() const;
    bool active() const { return intensity > 0.0 && size_law != SizeLaw::None; }
    double sample_size(Rng& rng) const;
};

enum class Regime { Subcritical, Critical, Invalid };

// Drift parameter triple (theta, kappa, mu). Estimates may leave
// (0,inf)^2 x R, so no positivity is enforced here.
struct Psi {
    double theta = 0.0;
    double kappa = 0.0;
    double mu = 0.0;
};

struct ModelParams {
    double theta;   // long-run variance level, > 0
    double kappa;   // mean reversion rate, > 0
    double mu;      // price drift
    double sigma;   // vol-of-vol, > 0
    double rho;     // Wiener correlation, in (-1, 1)
    double y0;      // initial variance, > 0
    double s0;      // initial price, > 0
    JumpSpec jump;

    void validate() const;

    // theta*kappa against sigma^2/2, with relative tolerance; the
    // estimator theory requires theta*kappa >= sigma^2/2.
    Regime regime(double rel_tol = kRegimeTol) const;

    Psi psi() const { return {theta, kappa, mu}; }

    static constexpr double kRegimeTol = 1e-9;
};

// H(x1, x2, x3) = (x1*x2, x2, x3); maps (theta, kappa, mu) to the natural
// parameter of the likelihood quadratic form.
Vec3 h_map(const Psi& psi);

// Inverse of h_map; requires v[1] != 0, else SingularSecondCoordinate.
Psi h_inverse(const Vec3& v);

// Closed-form moment E(Y_inf^K) of the stationary Gamma law with shape
// 2*theta*kappa/sigma^2 and rate 2*kappa/sigma^2. K = 1 returns theta
// exactly. Throws MomentUndefined when K <= -shape.
double stationary_moment(const ModelParams& params, double k_exponent);

// Asymptotic covariance of sqrt(T)*(psi_hat - psi) in the subcritical
// regime. Throws RegimeError unless regime() == Subcritical.
Mat3 asym_cov_V(const ModelParams& params);

// Covariance of the limit of sqrt(T)*(G_T^-1 f_T - H(psi)); equals the
// inverse of the stationary mean information matrix.
Mat3 asym_cov_V0(const ModelParams& params);

// One draw of tau = first time standard Brownian motion hits level 1.
// Sampled as 1/Z^2 (the Levy(0,1) law, via the reflection principle).
double sample_tau(Rng& rng);

// One draw of the critical-case limit law of T*(mu_hat - mu):
// rho*sigma/(kappa*tau) + sigma*sqrt(1-rho^2)/(kappa*sqrt(tau)) * Z.
double sample_limit_mu_critical(const ModelParams& params, Rng& rng);

// Same law for the randomly scaled third coordinate:
// rho/tau + sqrt(1-rho^2)/sqrt(tau) * Z.
double sample_limit_random_scaled_mu_critical(const ModelParams& params, Rng& rng);

}  // namespace svjmle
