#include "svjmle/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "svjmle/errors.hpp"
#include "svjmle/math.hpp"

namespace svjmle {

void CampaignConfig::validate() const {
    params.validate();
    grid.validate();
    if (trajectories < 1) throw std::invalid_argument("campaign needs at least one trajectory");
    if (scheme == SchemeKind::DriftImplicit &&
        !(params.theta * params.kappa > 0.25 * params.sigma * params.sigma))
        throw SchemeDomainError("drift-implicit scheme requires theta*kappa > sigma^2/4");
}

std::vector<double> EnsembleResult::det_column(std::size_t coord) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        if (r.status == TrajectoryStatus::Ok) out.push_back(r.det_errors[coord]);
    return out;
}

std::vector<double> EnsembleResult::rand_column(std::size_t coord) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        if (r.status == TrajectoryStatus::Ok) out.push_back(r.rand_errors[coord]);
    return out;
}

TrajectoryRecord run_trajectory(const CampaignConfig& config, std::size_t index) {
    TrajectoryRecord rec;
    rec.index = index;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.psi_hat = {nan, nan, nan};
    rec.det_errors = {{nan, nan, nan}};
    rec.rand_errors = {{nan, nan, nan}};

    Rng rng = Rng::substream(config.master_seed, index);
    const bool with_price = config.i45_variant == I45Variant::Price;
    try {
        const PathBundle path =
            simulate_bundle(config.params, config.grid, rng, config.scheme, with_price);
        const SuffStats stats = reduce_path(config.params, config.grid, path,
                                            config.i3_variant, config.i45_variant);
        rec.i1 = stats.i1;
        rec.i2 = stats.i2;
        rec.y_terminal = stats.y_terminal;

        const MleEstimate est = mle(stats, config.params.sigma, config.params.rho, config.route);
        const ScaledErrors errs =
            scaled_errors(est, config.params.psi(), stats, config.regime());
        rec.psi_hat = est.psi_hat;
        rec.det_errors = errs.deterministic;
        rec.rand_errors = errs.random_scaled;
        rec.status = TrajectoryStatus::Ok;
    } catch (const SingularSecondCoordinate&) {
        rec.status = TrajectoryStatus::Singular;
    } catch (const DegenerateStats&) {
        rec.status = TrajectoryStatus::Degenerate;
    } catch (const NonpositivePath&) {
        rec.status = TrajectoryStatus::Degenerate;
    }
    return rec;
}

EnsembleResult monte_carlo(const CampaignConfig& config) {
    config.validate();
    const std::size_t m = config.trajectories;

    EnsembleResult out;
    out.records.resize(m);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        out.records[static_cast<std::size_t>(i)] =
            run_trajectory(config, static_cast<std::size_t>(i));
    }

    // Aggregation is sequential in index order; together with the
    // per-trajectory substreams this makes the result worker-count invariant.
    KahanSum sums[3];
    std::size_t ok = 0;
    const Psi truth = config.params.psi();
    for (const auto& r : out.records) {
        if (r.status != TrajectoryStatus::Ok) {
            ++out.failures;
            continue;
        }
        ++ok;
        sums[0].add((r.psi_hat.theta - truth.theta) / truth.theta);
        sums[1].add((r.psi_hat.kappa - truth.kappa) / truth.kappa);
        sums[2].add((r.psi_hat.mu - truth.mu) / truth.mu);
    }
    for (int c = 0; c < 3; ++c)
        out.mean_rel_err[c] = ok ? sums[c].value() / static_cast<double>(ok) : 0.0;

    for (std::size_t c = 0; c < 3; ++c) {
        auto det = out.det_column(c);
        auto rnd = out.rand_column(c);
        if (det.size() >= 2)
            out.ks_det_normal[c] = ks_one_sample(std::move(det), normal_cdf);
        if (rnd.size() >= 2)
            out.ks_rand_normal[c] = ks_one_sample(std::move(rnd), normal_cdf);
    }
    return out;
}

double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 2)
        throw std::invalid_argument("ks_one_sample: need at least two samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: both samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

std::vector<HistogramRow> histogram_export(const std::vector<double>& samples, std::size_t bins,
                                           double lo, double hi,
                                           const std::function<double(double)>& overlay) {
    if (bins < 1) throw std::invalid_argument("histogram_export: need at least one bin");
    if (!(hi > lo)) throw std::invalid_argument("histogram_export: empty range");

    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    std::size_t inside = 0;
    for (double x : samples) {
        if (x < lo || x > hi) continue;
        std::size_t b = static_cast<std::size_t>((x - lo) / width);
        if (b >= bins) b = bins - 1;  // right edge
        ++counts[b];
        ++inside;
    }

    std::vector<HistogramRow> rows(bins);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t b = 0; b < bins; ++b) {
        rows[b].bin_left = lo + width * static_cast<double>(b);
        rows[b].bin_right = lo + width * static_cast<double>(b + 1);
        rows[b].density =
            inside ? static_cast<double>(counts[b]) / (static_cast<double>(inside) * width) : 0.0;
        rows[b].reference_density =
            overlay ? overlay(0.5 * (rows[b].bin_left + rows[b].bin_right)) : nan;
    }
    return rows;
}

std::vector<HistogramRow> histogram_export(const std::vector<double>& samples, std::size_t bins,
                                           const std::function<double(double)>& overlay) {
    if (samples.empty()) throw std::invalid_argument("histogram_export: no samples");
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    double a = *lo, b = *hi;
    if (a == b) {  // degenerate sample; give the single bin unit width
        a -= 0.5;
        b += 0.5;
    }
    return histogram_export(samples, bins, a, b, overlay);
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

const char* to_string(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::Ok: return "ok";
        case TrajectoryStatus::Degenerate: return "degenerate";
        case TrajectoryStatus::Singular: return "singular";
    }
    return "unknown";
}

void write_records_csv(const std::string& path, const std::vector<TrajectoryRecord>& records) {
    auto out = open_out(path);
    out << "index,theta_hat,kappa_hat,mu_hat,e1,e2,e3,r1,r2,r3,status\n";
    for (const auto& r : records) {
        out << r.index << ',' << fmt(r.psi_hat.theta) << ',' << fmt(r.psi_hat.kappa) << ','
            << fmt(r.psi_hat.mu) << ',' << fmt(r.det_errors[0]) << ',' << fmt(r.det_errors[1])
            << ',' << fmt(r.det_errors[2]) << ',' << fmt(r.rand_errors[0]) << ','
            << fmt(r.rand_errors[1]) << ',' << fmt(r.rand_errors[2]) << ','
            << to_string(r.status) << '\n';
    }
}

void write_summary_csv(const std::string& path, const std::vector<SweepColumn>& columns) {
    auto out = open_out(path);
    out << "quantity";
    for (const auto& c : columns) out << ",T" << fmt(c.horizon);
    out << '\n';
    const char* names[3] = {"theta_rel_err", "kappa_rel_err", "mu_rel_err"};
    for (int q = 0; q < 3; ++q) {
        out << names[q];
        for (const auto& c : columns) out << ',' << fmt(c.rel_err[q]);
        out << '\n';
    }
    out << "failures";
    for (const auto& c : columns) out << ',' << c.failures;
    out << '\n';
}

void write_histogram_csv(const std::string& path, const std::vector<HistogramRow>& rows) {
    auto out = open_out(path);
    out << "bin_left,bin_right,density,reference_density\n";
    for (const auto& r : rows) {
        out << fmt(r.bin_left) << ',' << fmt(r.bin_right) << ',' << fmt(r.density) << ','
            << fmt(r.reference_density) << '\n';
    }
}

}  // namespace svjmle
