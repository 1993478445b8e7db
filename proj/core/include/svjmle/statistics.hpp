#pragma once

#include <vector>

#include "svjmle/linalg.hpp"
#include "svjmle/simulate.hpp"

namespace svjmle {

enum class I3Variant { Increment, Log };
enum class I45Variant { Wiener, Price };

// Sufficient statistics of the drift likelihood, reduced from one
// trajectory. i3/i4/i5 hold the values selected by the variant flags;
// both i3 constructions are retained for the bias study.
struct SuffStats {
    double y_initial = 0.0;
    double y_terminal = 0.0;
    double i1 = 0.0;        // int Y du
    double i2 = 0.0;        // int du / Y
    double i3 = 0.0;        // int dY / Y, chosen variant
    double i3_increment = 0.0;
    double i3_log = 0.0;
    double i4 = 0.0;        // int (dS - S dL) / S, chosen variant
    double i5 = 0.0;        // int (dS - S dL) / (Y S), chosen variant
    double horizon = 0.0;   // T
    I3Variant i3_variant = I3Variant::Increment;
    I45Variant i45_variant = I45Variant::Wiener;

    // Cauchy-Schwarz gap; zero only for constant paths. Downstream
    // estimator entry points reject degenerate stats.
    bool degenerate() const { return !(i1 * i2 > horizon * horizon) || !(i2 > 0.0); }
};

struct CoreIntegrals {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;        // sum of increments over left values
    double i3_log = 0.0;    // log Y_n - log y_0 + sigma^2/2 * i2
    double y_terminal = 0.0;
};

// Left-endpoint Riemann/increment sums over the variance path, with
// compensated accumulation. sigma enters only the log-form i3.
CoreIntegrals integrals_core(const std::vector<double>& y, const SimGrid& grid, double sigma);

// Wiener-based i4/i5: mu*T + sum sqrt(Y_i) xi_i and mu*i2 + sum xi_i/sqrt(Y_i)
// with xi = rho dW + sqrt(1-rho^2) dB.
std::pair<double, double> integrals_wiener(const ModelParams& params, const SimGrid& grid,
                                           const std::vector<double>& y,
                                           const std::vector<double>& dw,
                                           const std::vector<double>& db);

// Price-based observable variants built from S increments minus the Levy part.
std::pair<double, double> integrals_price(const SimGrid& grid, const std::vector<double>& y,
                                          const std::vector<double>& s,
                                          const std::vector<double>& dl);

// Realized quadratic (co)variation statistic for (sigma^2, rho*sigma):
// outer products of (dY, dlog S) increments over int Y du, with the known
// jump quadratic variation removed from the log-price entry. Expected value
// [[sigma^2, rho*sigma], [rho*sigma, 1]].
Mat2 realized_sigma_rho(const SimGrid& grid, const std::vector<double>& y,
                        const std::vector<double>& s,
                        const std::vector<double>& log_jump_sums);

// Assemble a SuffStats from a simulated bundle under the chosen variants.
SuffStats reduce_path(const ModelParams& params, const SimGrid& grid, const PathBundle& path,
                      I3Variant i3_variant = I3Variant::Increment,
                      I45Variant i45_variant = I45Variant::Wiener);

}  // namespace svjmle
