#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "svjmle/model.hpp"
#include "svjmle/rng.hpp"

namespace svjmle {

// Uniform time grid: t_i = i * dt, i = 0..n, dt = T/n.
struct SimGrid {
    double horizon = 1.0;  // T, > 0
    std::size_t steps = 1; // n, >= 1

    double dt() const { return horizon / static_cast<double>(steps); }
    void validate() const;
};

enum class SchemeKind {
    DriftImplicit,    // positivity preserving, requires theta*kappa > sigma^2/4
    TruncatedEuler,   // Y+ inside the square root
    SymmetrizedEuler, // |Y| after the update
};

// One simulated trajectory. dW/dB are the Wiener increments actually
// consumed, jump_sums holds per-step sums of log jump sizes J, dL the
// per-step Levy increments sum(e^J - 1). The price path is only filled
// when requested.
struct PathBundle {
    std::vector<double> y;          // n+1 variance values
    std::vector<double> dW;         // n increments
    std::vector<double> dB;         // n increments
    std::vector<double> s;          // n+1 prices; empty unless simulated
    std::vector<double> jump_sums;  // n per-step sums of J
    std::vector<double> dL;         // n per-step sums of e^J - 1
};

// Individual jumps per step, kept only in debug mode for identity checks.
struct JumpDetail {
    std::vector<std::vector<double>> jumps_per_step;
};

// n i.i.d. centered normal increments with variance dt.
std::vector<double> wiener_increments(Rng& rng, const SimGrid& grid);

// One step of the drift-implicit (Alfonsi) square-root recursion.
// Valid for theta*kappa > sigma^2/4; output strictly positive.
double cir_step_implicit(double y, double dw, const ModelParams& params, double dt);

double cir_step_truncated(double y, double dw, const ModelParams& params, double dt);
double cir_step_symmetrized(double y, double dw, const ModelParams& params, double dt);

// Full variance path from given Wiener increments. y[0] = y0.
std::vector<double> simulate_cir(const ModelParams& params, const SimGrid& grid,
                                 const std::vector<double>& dw, SchemeKind scheme);

// Compound Poisson jumps aggregated per step: (jump_sums, dL).
std::pair<std::vector<double>, std::vector<double>> simulate_jumps(
    Rng& rng, const SimGrid& grid, const JumpSpec& jump, JumpDetail* detail = nullptr);

// Price recursion S_{i+1} = S_i exp(mu dt - Y_i dt/2
//   + sqrt(Y_i)(rho dW + sqrt(1-rho^2) dB) + jump_sums[i]).
std::vector<double> simulate_price(const ModelParams& params, const SimGrid& grid,
                                   const std::vector<double>& y,
                                   const std::vector<double>& dw,
                                   const std::vector<double>& db,
                                   const std::vector<double>& jump_sums);

// Exact draw of Y_T via its noncentral chi-squared law; validation oracle
// for the discretized variance path.
double exact_cir_terminal(const ModelParams& params, double horizon, Rng& rng);

// Convenience wrapper running the whole per-trajectory generation with one
// RNG stream: dW, dB, (optionally jumps and price), variance path.
PathBundle simulate_bundle(const ModelParams& params, const SimGrid& grid, Rng& rng,
                           SchemeKind scheme, bool with_price,
                           JumpDetail* detail = nullptr);

}  // namespace svjmle
