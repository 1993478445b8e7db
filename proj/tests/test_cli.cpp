#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "svjmle/errors.hpp"

using namespace svjmle;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

#ifdef SVJMLE_CLI_PATH
int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(SVJMLE_CLI_PATH) + " " + args + " >" + log.string() +
                            " 2>&1";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
}
#endif

const char* kSampleConfig = R"(# sample
[model]
theta = 2
kappa = 0.5
mu = 1 - sqrt(e)
sigma = 0.2
rho = 0.5
y0 = 1
s0 = 100
jump_intensity = 1
jump_law = normal
jump_mean = 0
jump_sd = 0.1

[grid]
T = 2
n = 200

[campaign]
M = 4
seed = 9
scheme = drift-implicit
i3 = increment
i45 = wiener
regime = auto

[output]
dir = .
)";

}  // namespace

TEST_CASE("expression evaluator") {
    CHECK(cli::eval_expression("1 - sqrt(e)") == 1.0 - std::sqrt(M_E));
    CHECK(cli::eval_expression("sqrt(2)") == std::sqrt(2.0));
    CHECK(cli::eval_expression("2*(1+3)/4") == 2.0);
    CHECK(cli::eval_expression("-0.5") == -0.5);
    CHECK(cli::eval_expression("exp(1)") == std::exp(1.0));
    CHECK(cli::eval_expression("pi") == M_PI);
    CHECK_THROWS_AS(cli::eval_expression("sqrt(2"), ConfigError);
    CHECK_THROWS_AS(cli::eval_expression("2 +"), ConfigError);
    CHECK_THROWS_AS(cli::eval_expression("foo"), ConfigError);
}

TEST_CASE("config parsing") {
    const CampaignConfig cfg = cli::parse_config_text(kSampleConfig, "sample");
    CHECK(cfg.params.theta == 2.0);
    CHECK(cfg.params.mu == 1.0 - std::sqrt(M_E));
    CHECK(cfg.grid.horizon == 2.0);
    CHECK(cfg.grid.steps == 200);
    CHECK(cfg.trajectories == 4);
    CHECK(cfg.master_seed == 9);
    CHECK(cfg.scheme == SchemeKind::DriftImplicit);
    CHECK(!cfg.regime_override.has_value());

    // diagnostics carry source and line
    try {
        cli::parse_config_text("[model]\nbogus = 1\n", "bad.toml");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("bad.toml:2") != std::string::npos);
        CHECK(what.find("bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(cli::parse_config_text("x = 1\n", "s"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text("[nosuch]\n", "s"), ConfigError);

    // missing file names the path
    try {
        cli::parse_config_file("/nonexistent/thing.toml");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/thing.toml") != std::string::npos);
    }
}

TEST_CASE("render/parse round trip") {
    CampaignConfig cfg = cli::parse_config_text(kSampleConfig, "sample");
    cfg.regime_override = Regime::Critical;
    cfg.i3_variant = I3Variant::Log;
    const std::string text = cli::render_config(cfg);
    const CampaignConfig back = cli::parse_config_text(text, "echo");
    CHECK(back.params.theta == cfg.params.theta);
    CHECK(back.params.mu == cfg.params.mu);
    CHECK(back.params.sigma == cfg.params.sigma);
    CHECK(back.grid.horizon == cfg.grid.horizon);
    CHECK(back.grid.steps == cfg.grid.steps);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(back.i3_variant == I3Variant::Log);
    CHECK(back.regime_override == Regime::Critical);
    CHECK(cli::render_config(back) == text);
}

#ifdef SVJMLE_CLI_PATH

TEST_CASE("cli end to end") {
    const fs::path dir = fs::temp_directory_path() / "svjmle_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "run.toml";
    spit(cfg_path, kSampleConfig);
    const fs::path log = dir / "log.txt";

    SUBCASE("simulate determinism") {
        REQUIRE(run_cli("simulate --config " + cfg_path.string() + " --seed 7 --out " +
                            (dir / "a").string(),
                        log) == 0);
        REQUIRE(run_cli("simulate --config " + cfg_path.string() + " --seed 7 --out " +
                            (dir / "b").string(),
                        log) == 0);
        CHECK(slurp(dir / "a" / "path.csv") == slurp(dir / "b" / "path.csv"));
        CHECK(slurp(dir / "a" / "path.csv").substr(0, 6) == "t,Y,S\n");
    }

    SUBCASE("missing config file names the path") {
        const int rc = run_cli("simulate --config " + (dir / "nope.toml").string(), log);
        CHECK(rc != 0);
        CHECK(slurp(log).find("nope.toml") != std::string::npos);
    }

    SUBCASE("scheme domain matrix") {
        // theta*kappa = 0.05 <= sigma^2/4 = 1: implicit rejected, truncated runs
        std::string text = kSampleConfig;
        text.replace(text.find("theta = 2"), 9, "theta = 0.1");
        text.replace(text.find("sigma = 0.2"), 11, "sigma = 2.0");
        const fs::path bad = dir / "bad.toml";
        spit(bad, text);
        CHECK(run_cli("simulate --config " + bad.string() + " --out " + (dir / "c").string(),
                      log) != 0);
        CHECK(run_cli("simulate --config " + bad.string() + " --scheme truncated --out " +
                          (dir / "d").string(),
                      log) == 0);
    }

    SUBCASE("estimate: degenerate stats exit code") {
        // a single-step grid has i1*i2 = T^2 exactly
        const int rc = run_cli(
            "estimate --config " + cfg_path.string() + " --n 1 --out " + (dir / "e").string(),
            log);
        CHECK(rc == 2);
    }

    SUBCASE("estimate reports the variant") {
        REQUIRE(run_cli("estimate --config " + cfg_path.string() + " --variant i3-tilde --out " +
                            (dir / "f").string(),
                        log) == 0);
        CHECK(slurp(log).find("i3=log") != std::string::npos);
        CHECK(slurp(dir / "f" / "effective_config.toml").find("i3 = log") != std::string::npos);
    }

    SUBCASE("montecarlo sweep layout and effective-config round trip") {
        REQUIRE(run_cli("montecarlo --config " + cfg_path.string() + " --sweep-T 1,2 --out " +
                            (dir / "g").string(),
                        log) == 0);
        const std::string summary = slurp(dir / "g" / "summary.csv");
        CHECK(summary.substr(0, summary.find('\n')) == "quantity,T1,T2");
        CHECK(fs::exists(dir / "g" / "records_T1.csv"));
        CHECK(fs::exists(dir / "g" / "records_T2.csv"));
        CHECK(fs::exists(dir / "g" / "hist_e1_T2.csv"));

        // re-running from the echoed config reproduces the records
        REQUIRE(run_cli("montecarlo --config " + (dir / "g" / "effective_config.toml").string() +
                            " --sweep-T 1,2 --out " + (dir / "h").string(),
                        log) == 0);
        CHECK(slurp(dir / "g" / "records_T2.csv") == slurp(dir / "h" / "records_T2.csv"));
        CHECK(slurp(dir / "g" / "summary.csv") == slurp(dir / "h" / "summary.csv"));
    }

    SUBCASE("montecarlo failure-rate exit code") {
        // a one-step grid gives i1*i2 = T^2 on every trajectory
        const int rc = run_cli("montecarlo --config " + cfg_path.string() + " --n 1 --out " +
                                   (dir / "j").string(),
                               log);
        CHECK(rc == 3);
        const std::string records = slurp(dir / "j" / "records_T2.csv");
        CHECK(records.find("degenerate") != std::string::npos);
    }

    SUBCASE("default output directory from the environment") {
        const fs::path envdir = dir / "envout";
        const std::string cmd = "SVJMLE_OUT=" + envdir.string() + " " + SVJMLE_CLI_PATH +
                                " simulate --config " + cfg_path.string() + " >" +
                                log.string() + " 2>&1";
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        CHECK(fs::exists(envdir / "path.csv"));
    }

    SUBCASE("limitcheck regime exit code") {
        // sigma^2/4 < theta*kappa < sigma^2/2: valid scheme, invalid regime
        std::string text = kSampleConfig;
        text.replace(text.find("theta = 2"), 9, "theta = 1.5");
        text.replace(text.find("kappa = 0.5"), 11, "kappa = 1.0");
        text.replace(text.find("sigma = 0.2"), 11, "sigma = 2.0");
        const fs::path inv = dir / "invalid.toml";
        spit(inv, text);
        CHECK(run_cli("limitcheck --config " + inv.string() + " --out " + (dir / "i").string(),
                      log) == 4);
    }
}

#endif  // SVJMLE_CLI_PATH
