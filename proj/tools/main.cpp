#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "svjmle/errors.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trajectories;
    std::optional<double> horizon;
    std::optional<std::size_t> steps;
    std::optional<std::string> scheme;
    std::optional<std::string> i3_variant;
    std::optional<std::string> i45_variant;
    std::optional<std::string> out_dir;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "configuration file")->required();
    cmd->add_option("--seed", ov.seed, "master seed override");
    cmd->add_option("-M,--trajectories", ov.trajectories, "trajectory count override");
    cmd->add_option("--T", ov.horizon, "horizon override");
    cmd->add_option("--n", ov.steps, "step count override");
    cmd->add_option("--scheme", ov.scheme, "drift-implicit|truncated|symmetrized")
        ->check(CLI::IsMember({"drift-implicit", "truncated", "symmetrized"}));
    cmd->add_option("--variant", ov.i3_variant, "i3 construction: i3|i3-tilde")
        ->check(CLI::IsMember({"i3", "i3-tilde"}));
    cmd->add_option("--i45", ov.i45_variant, "i4/i5 construction: wiener|price")
        ->check(CLI::IsMember({"wiener", "price"}));
    cmd->add_option("--out", ov.out_dir, "output directory (default: SVJMLE_OUT or config)");
}

svjmle::CampaignConfig resolve(const Overrides& ov) {
    svjmle::CampaignConfig cfg = svjmle::cli::parse_config_file(ov.config_path);
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.trajectories) cfg.trajectories = *ov.trajectories;
    if (ov.horizon) cfg.grid.horizon = *ov.horizon;
    if (ov.steps) cfg.grid.steps = *ov.steps;
    if (ov.scheme) {
        if (*ov.scheme == "drift-implicit") cfg.scheme = svjmle::SchemeKind::DriftImplicit;
        else if (*ov.scheme == "truncated") cfg.scheme = svjmle::SchemeKind::TruncatedEuler;
        else cfg.scheme = svjmle::SchemeKind::SymmetrizedEuler;
    }
    if (ov.i3_variant)
        cfg.i3_variant = (*ov.i3_variant == "i3") ? svjmle::I3Variant::Increment
                                                  : svjmle::I3Variant::Log;
    if (ov.i45_variant)
        cfg.i45_variant = (*ov.i45_variant == "wiener") ? svjmle::I45Variant::Wiener
                                                        : svjmle::I45Variant::Price;
    if (ov.out_dir) cfg.output_dir = *ov.out_dir;
    else if (const char* env = std::getenv("SVJMLE_OUT")) cfg.output_dir = env;
    cfg.validate();
    return cfg;
}

std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(svjmle::cli::eval_expression(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jump-type Heston simulation and drift-MLE engine"};
    app.require_subcommand(1);

    Overrides ov;
    std::string sweep_spec;
    std::string reference = "mixed-normal";

    CLI::App* sim = app.add_subcommand("simulate", "simulate one trajectory and dump the path");
    add_common_options(sim, ov);

    CLI::App* est = app.add_subcommand("estimate", "single-trajectory estimate report");
    add_common_options(est, ov);

    CLI::App* mc = app.add_subcommand("montecarlo", "Monte Carlo campaign with CSV outputs");
    add_common_options(mc, ov);
    mc->add_option("--sweep-T", sweep_spec, "comma-separated horizons, e.g. 10,100,300");

    CLI::App* lc = app.add_subcommand("limitcheck", "goodness-of-fit against the limit laws");
    add_common_options(lc, ov);
    lc->add_option("--reference", reference, "e3 reference law: normal|mixed-normal")
        ->check(CLI::IsMember({"normal", "mixed-normal"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? svjmle::cli::kExitUsage : svjmle::cli::kExitOk;
    }

    try {
        const svjmle::CampaignConfig cfg = resolve(ov);
        if (sim->parsed()) return svjmle::cli::cmd_simulate(cfg);
        if (est->parsed()) return svjmle::cli::cmd_estimate(cfg);
        if (mc->parsed()) return svjmle::cli::cmd_montecarlo(cfg, parse_sweep(sweep_spec));
        if (lc->parsed()) return svjmle::cli::cmd_limitcheck(cfg, reference);
    } catch (const svjmle::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return svjmle::cli::kExitRegime;
    } catch (const svjmle::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return svjmle::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return svjmle::cli::kExitUsage;
    }
    return svjmle::cli::kExitUsage;
}
