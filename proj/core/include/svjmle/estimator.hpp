#pragma once

#include <utility>

#include "svjmle/linalg.hpp"
#include "svjmle/model.hpp"
#include "svjmle/statistics.hpp"

namespace svjmle {

// Information-type matrix G_T with the known nuisance constants it was
// built under. Strictly positive definite whenever i1*i2 > T^2 and i2 > 0.
struct InformationMatrix {
    Mat3 g;
    double horizon = 0.0;
    double sigma = 0.0;
    double rho = 0.0;
};

struct ScoreVector {
    Vec3 f;
};

enum class MleRoute { Matrix, CoordinateWise };

struct MleEstimate {
    Psi psi_hat;
    InformationMatrix g;
    ScoreVector f;
    MleRoute route = MleRoute::Matrix;
    // True when psi_hat lies in (0,inf)^2 x R; estimates outside are
    // returned as-is, never clamped.
    bool inside_psi = false;
};

struct RandomScaling {
    Mat3 r;  // upper triangular, r^T r = G_T
    Mat3 q;  // converges to [[kappa, theta, 0], [0,1,0], [0,0,1]]
};

struct ScaledErrors {
    Vec3 deterministic;
    Vec3 random_scaled;
};

// G_T = 1/((1-rho^2) sigma^2) * [[i2, -T, -rho*sigma*i2],
//                                [-T,  i1, rho*sigma*T],
//                                [-rho*sigma*i2, rho*sigma*T, sigma^2*i2]].
InformationMatrix build_G(const SuffStats& stats, double sigma, double rho);

// f_T = 1/((1-rho^2) sigma^2) * (i3 - rho*sigma*i5,
//                                -(Y_T - y_0) + rho*sigma*i4,
//                                -rho*sigma*i3 + sigma^2*i5).
ScoreVector build_f(const SuffStats& stats, double sigma, double rho);

// Closed-form inverse of G_T, prefactor 1/((i1*i2 - T^2) * i2).
Mat3 g_inverse_closed_form(const InformationMatrix& g, const SuffStats& stats);

// The MLE psi_hat = H^-1(G_T^-1 f_T), by the matrix route or the
// coordinatewise closed forms; the two agree to rounding on every valid
// input. Throws DegenerateStats / SingularSecondCoordinate.
MleEstimate mle(const SuffStats& stats, double sigma, double rho,
                MleRoute route = MleRoute::Matrix);

// Log likelihood ratio Lambda(psi, psi_ref) =
//   (H(psi)-H(ref))' f - 1/2 (H(psi)-H(ref))' G (H(psi)+H(ref)).
double log_likelihood_ratio(const Psi& psi, const Psi& psi_ref, const ScoreVector& f,
                            const InformationMatrix& g);

// Estimating-equation gradient: J(psi)' (f - G H(psi)) with
// J = [[kappa, theta, 0], [0,1,0], [0,0,1]]; vanishes exactly at the MLE.
Vec3 score(const Psi& psi, const ScoreVector& f, const InformationMatrix& g);

// Observable scaling pair (R_T, Q_T) from the path statistics.
RandomScaling random_scaling(const SuffStats& stats, double sigma, double rho);

// Deterministic scaled errors e1..e3 (regime-specific coefficients built
// from the true parameters) and the randomly scaled error vector.
ScaledErrors scaled_errors(const MleEstimate& est, const Psi& truth, const SuffStats& stats,
                           Regime regime);

}  // namespace svjmle
