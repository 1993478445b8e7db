#include "svjmle/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "svjmle/errors.hpp"

namespace svjmle {

void SimGrid::validate() const {
    if (!(horizon > 0.0)) throw std::invalid_argument("grid horizon must be > 0");
    if (steps < 1) throw std::invalid_argument("grid must have at least one step");
}

std::vector<double> wiener_increments(Rng& rng, const SimGrid& grid) {
    const double sd = std::sqrt(grid.dt());
    std::vector<double> dw(grid.steps);
    for (auto& x : dw) x = sd * rng.normal();
    return dw;
}

namespace {

void require_implicit_domain(const ModelParams& params) {
    if (!(params.theta * params.kappa > 0.25 * params.sigma * params.sigma))
        throw SchemeDomainError(
            "drift-implicit scheme requires theta*kappa > sigma^2/4");
}

}  // namespace

double cir_step_implicit(double y, double dw, const ModelParams& params, double dt) {
    require_implicit_domain(params);
    const double s = params.sigma;
    const double a = 0.5 * s * dw + std::sqrt(y);
    const double disc = a * a + (1.0 + 0.5 * params.kappa * dt) *
                                    (2.0 * params.theta * params.kappa - 0.5 * s * s) * dt;
    const double root = (a + std::sqrt(disc)) / (2.0 + params.kappa * dt);
    return root * root;
}

double cir_step_truncated(double y, double dw, const ModelParams& params, double dt) {
    const double yplus = y > 0.0 ? y : 0.0;
    return y + params.kappa * (params.theta - y) * dt + params.sigma * std::sqrt(yplus) * dw;
}

double cir_step_symmetrized(double y, double dw, const ModelParams& params, double dt) {
    const double next =
        y + params.kappa * (params.theta - y) * dt + params.sigma * std::sqrt(y) * dw;
    return std::abs(next);
}

std::vector<double> simulate_cir(const ModelParams& params, const SimGrid& grid,
                                 const std::vector<double>& dw, SchemeKind scheme) {
    grid.validate();
    if (dw.size() != grid.steps)
        throw std::invalid_argument("simulate_cir: increment array does not match the grid");
    if (scheme == SchemeKind::DriftImplicit) require_implicit_domain(params);

    const double dt = grid.dt();
    std::vector<double> y(grid.steps + 1);
    y[0] = params.y0;
    for (std::size_t i = 0; i < grid.steps; ++i) {
        switch (scheme) {
            case SchemeKind::DriftImplicit:
                y[i + 1] = cir_step_implicit(y[i], dw[i], params, dt);
                break;
            case SchemeKind::TruncatedEuler:
                y[i + 1] = cir_step_truncated(y[i], dw[i], params, dt);
                break;
            case SchemeKind::SymmetrizedEuler:
                y[i + 1] = cir_step_symmetrized(y[i], dw[i], params, dt);
                break;
        }
    }
    return y;
}

std::pair<std::vector<double>, std::vector<double>> simulate_jumps(
    Rng& rng, const SimGrid& grid, const JumpSpec& jump, JumpDetail* detail) {
    std::vector<double> sums(grid.steps, 0.0);
    std::vector<double> dl(grid.steps, 0.0);
    if (detail) detail->jumps_per_step.assign(grid.steps, {});
    if (!jump.active()) return {std::move(sums), std::move(dl)};

    const double mean = jump.intensity * grid.dt();
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const int count = rng.poisson(mean);
        for (int k = 0; k < count; ++k) {
            const double j = jump.sample_size(rng);
            sums[i] += j;
            dl[i] += std::expm1(j);
            if (detail) detail->jumps_per_step[i].push_back(j);
        }
    }
    return {std::move(sums), std::move(dl)};
}

std::vector<double> simulate_price(const ModelParams& params, const SimGrid& grid,
                                   const std::vector<double>& y,
                                   const std::vector<double>& dw,
                                   const std::vector<double>& db,
                                   const std::vector<double>& jump_sums) {
    grid.validate();
    const std::size_t n = grid.steps;
    if (y.size() != n + 1 || dw.size() != n || db.size() != n || jump_sums.size() != n)
        throw std::invalid_argument("simulate_price: arrays do not conform to the grid");

    const double dt = grid.dt();
    const double rho_c = std::sqrt(1.0 - params.rho * params.rho);
    std::vector<double> s(n + 1);
    s[0] = params.s0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] >= 0.0)) throw NonpositivePath("simulate_price: negative variance value");
        const double expo = params.mu * dt - 0.5 * y[i] * dt +
                            std::sqrt(y[i]) * (params.rho * dw[i] + rho_c * db[i]) +
                            jump_sums[i];
        s[i + 1] = s[i] * std::exp(expo);
    }
    return s;
}

double exact_cir_terminal(const ModelParams& params, double horizon, Rng& rng) {
    if (!(horizon > 0.0)) throw std::invalid_argument("exact_cir_terminal: horizon must be > 0");
    const double k = params.kappa, s2 = params.sigma * params.sigma;
    const double decay = std::exp(-k * horizon);
    const double c = s2 * (1.0 - decay) / (4.0 * k);
    const double dof = 4.0 * params.theta * k / s2;
    const double noncentrality = params.y0 * decay / c;

    // Noncentral chi-squared: for dof > 1 split off a squared shifted normal,
    // otherwise mix a central chi-squared over a Poisson count.
    double x;
    if (dof > 1.0) {
        const double z = rng.normal() + std::sqrt(noncentrality);
        x = z * z + 2.0 * rng.gamma(0.5 * (dof - 1.0));
    } else {
        const int mix = rng.poisson(0.5 * noncentrality);
        x = 2.0 * rng.gamma(0.5 * dof + static_cast<double>(mix));
    }
    return c * x;
}

PathBundle simulate_bundle(const ModelParams& params, const SimGrid& grid, Rng& rng,
                           SchemeKind scheme, bool with_price, JumpDetail* detail) {
    PathBundle b;
    b.dW = wiener_increments(rng, grid);
    b.dB = wiener_increments(rng, grid);
    if (with_price || detail) {
        auto [sums, dl] = simulate_jumps(rng, grid, params.jump, detail);
        b.jump_sums = std::move(sums);
        b.dL = std::move(dl);
    } else {
        b.jump_sums.assign(grid.steps, 0.0);
        b.dL.assign(grid.steps, 0.0);
    }
    b.y = simulate_cir(params, grid, b.dW, scheme);
    if (with_price) b.s = simulate_price(params, grid, b.y, b.dW, b.dB, b.jump_sums);
    return b;
}

}  // namespace svjmle
