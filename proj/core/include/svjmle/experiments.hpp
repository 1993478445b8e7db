#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svjmle/estimator.hpp"
#include "svjmle/model.hpp"
#include "svjmle/simulate.hpp"
#include "svjmle/statistics.hpp"

namespace svjmle {

struct CampaignConfig {
    ModelParams params;
    SimGrid grid;
    std::size_t trajectories = 1000;  // M
    std::uint64_t master_seed = 0;
    std::optional<Regime> regime_override;
    SchemeKind scheme = SchemeKind::DriftImplicit;
    I3Variant i3_variant = I3Variant::Increment;
    I45Variant i45_variant = I45Variant::Wiener;
    MleRoute route = MleRoute::Matrix;
    std::string output_dir;

    void validate() const;
    Regime regime() const { return regime_override.value_or(params.regime()); }
};

enum class TrajectoryStatus { Ok, Degenerate, Singular };

struct TrajectoryRecord {
    std::size_t index = 0;
    TrajectoryStatus status = TrajectoryStatus::Ok;
    Psi psi_hat;
    Vec3 det_errors;     // e1, e2, e3
    Vec3 rand_errors;    // r1, r2, r3
    double i1 = 0.0;
    double i2 = 0.0;
    double y_terminal = 0.0;
};

struct EnsembleResult {
    std::vector<TrajectoryRecord> records;        // ordered by index
    double mean_rel_err[3] = {0.0, 0.0, 0.0};     // (theta, kappa, mu)
    double ks_det_normal[3] = {0.0, 0.0, 0.0};    // e1..e3 vs N(0,1)
    double ks_rand_normal[3] = {0.0, 0.0, 0.0};   // r1..r3 vs N(0,1)
    std::size_t failures = 0;

    std::vector<double> det_column(std::size_t coord) const;
    std::vector<double> rand_column(std::size_t coord) const;
};

// Simulate -> reduce -> estimate -> scale, on the RNG substream derived
// from (master_seed, index). Degenerate or singular statistics become a
// recorded failure, not a crash.
TrajectoryRecord run_trajectory(const CampaignConfig& config, std::size_t index);

// Full campaign. Trajectories run concurrently on independent substreams;
// records and summaries are identical for any worker count.
EnsembleResult monte_carlo(const CampaignConfig& config);

// Sup-norm distance between the empirical CDF of samples and a reference CDF.
double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

// Sup-norm distance between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct HistogramRow {
    double bin_left = 0.0;
    double bin_right = 0.0;
    double density = 0.0;
    double reference_density = 0.0;  // NaN when no overlay was given
};

// Density-normalized histogram over [lo, hi]; the optional overlay is
// evaluated at bin centers. Samples outside the range are dropped and the
// densities renormalize over the retained mass.
std::vector<HistogramRow> histogram_export(const std::vector<double>& samples, std::size_t bins,
                                           double lo, double hi,
                                           const std::function<double(double)>& overlay = {});

// Range-from-data convenience overload.
std::vector<HistogramRow> histogram_export(const std::vector<double>& samples, std::size_t bins,
                                           const std::function<double(double)>& overlay = {});

// CSV emission. All numbers are printed with %.17g so outputs are
// byte-identical across runs.
void write_records_csv(const std::string& path, const std::vector<TrajectoryRecord>& records);

struct SweepColumn {
    double horizon = 0.0;
    double rel_err[3] = {0.0, 0.0, 0.0};
    std::size_t failures = 0;
};
void write_summary_csv(const std::string& path, const std::vector<SweepColumn>& columns);

void write_histogram_csv(const std::string& path, const std::vector<HistogramRow>& rows);

const char* to_string(TrajectoryStatus status);

}  // namespace svjmle
