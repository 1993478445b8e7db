#include <benchmark/benchmark.h>

#include <cmath>

#include "svjmle/estimator.hpp"
#include "svjmle/experiments.hpp"
#include "svjmle/simulate.hpp"

using namespace svjmle;

namespace {

ModelParams base_params() {
    return {2.0, 0.5, 1.0 - std::sqrt(M_E), 0.2, 0.5, 1.0, 100.0, {}};
}

void BM_NormalDraw(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_NormalDraw);

void BM_CirStepImplicit(benchmark::State& state) {
    const ModelParams p = base_params();
    Rng rng(2);
    double y = p.y0;
    for (auto _ : state) {
        y = cir_step_implicit(y, 0.1 * rng.normal(), p, 0.01);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_CirStepImplicit);

void BM_SampleTau(benchmark::State& state) {
    Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sample_tau(rng));
}
BENCHMARK(BM_SampleTau);

void BM_Trajectory(benchmark::State& state) {
    CampaignConfig cfg;
    cfg.params = base_params();
    cfg.grid = {10.0, static_cast<std::size_t>(state.range(0))};
    cfg.trajectories = 1;
    cfg.master_seed = 4;
    std::size_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trajectory(cfg, index++));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Trajectory)->Arg(1000)->Arg(10000);

void BM_MleFromStats(benchmark::State& state) {
    const ModelParams p = base_params();
    Rng rng(5);
    const SimGrid grid{10.0, 1000};
    const PathBundle b = simulate_bundle(p, grid, rng, SchemeKind::DriftImplicit, false);
    const SuffStats st = reduce_path(p, grid, b);
    for (auto _ : state) benchmark::DoNotOptimize(mle(st, p.sigma, p.rho));
}
BENCHMARK(BM_MleFromStats);

}  // namespace

BENCHMARK_MAIN();
