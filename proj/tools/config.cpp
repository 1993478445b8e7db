#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "svjmle/errors.hpp"

namespace svjmle::cli {

namespace {

// --- tiny arithmetic expressions: + - * /, unary sign, sqrt, exp, e, pi ---

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ExprParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ConfigError("bad expression '" + s + "': " + why);
    }

    double parse_expr() {
        double v = parse_term();
        for (;;) {
            if (eat('+')) v += parse_term();
            else if (eat('-')) v -= parse_term();
            else return v;
        }
    }

    double parse_term() {
        double v = parse_factor();
        for (;;) {
            if (eat('*')) v *= parse_factor();
            else if (eat('/')) v /= parse_factor();
            else return v;
        }
    }

    double parse_factor() {
        skip_ws();
        if (eat('-')) return -parse_factor();
        if (eat('+')) return parse_factor();
        if (eat('(')) {
            double v = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (pos >= s.size()) fail("unexpected end");
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "e") return M_E;
            if (name == "pi") return M_PI;
            if (name == "sqrt" || name == "exp") {
                if (!eat('(')) fail(name + " needs '('");
                double v = parse_expr();
                if (!eat(')')) fail("missing ')'");
                return name == "sqrt" ? std::sqrt(v) : std::exp(v);
            }
            fail("unknown name '" + name + "'");
        }
        char* end = nullptr;
        const double v = std::strtod(s.c_str() + pos, &end);
        if (end == s.c_str() + pos) fail("expected a number");
        pos = static_cast<std::size_t>(end - s.c_str());
        return v;
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Diag {
    const std::string& source;
    int line = 0;
    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError(source + ":" + std::to_string(line) + ": " + why);
    }
};

double num(const Diag& d, const std::string& key, const std::string& value) {
    try {
        return eval_expression(value);
    } catch (const ConfigError& e) {
        d.fail("value for '" + key + "': " + e.what());
    }
}

std::uint64_t uint_value(const Diag& d, const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        d.fail("value for '" + key + "' must be a non-negative integer, got '" + value + "'");
    }
}

}  // namespace

double eval_expression(const std::string& text) {
    ExprParser p(text);
    const double v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return v;
}

CampaignConfig default_config() {
    CampaignConfig cfg;
    cfg.params.theta = 2.0;
    cfg.params.kappa = 0.5;
    cfg.params.mu = 1.0 - std::sqrt(M_E);
    cfg.params.sigma = 0.2;
    cfg.params.rho = 0.5;
    cfg.params.y0 = 1.0;
    cfg.params.s0 = 100.0;
    cfg.params.jump = JumpSpec{};
    cfg.grid.horizon = 300.0;
    cfg.grid.steps = 30000;
    cfg.trajectories = 1000;
    cfg.master_seed = 1;
    cfg.output_dir = ".";
    return cfg;
}

CampaignConfig parse_config_text(const std::string& text, const std::string& source_name) {
    CampaignConfig cfg = default_config();
    std::istringstream in(text);
    std::string raw;
    std::string section;
    Diag diag{source_name, 0};

    while (std::getline(in, raw)) {
        ++diag.line;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') diag.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "grid" && section != "campaign" &&
                section != "output")
                diag.fail("unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) diag.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) diag.fail("expected key = value");
        if (section.empty()) diag.fail("key '" + key + "' outside any section");

        if (section == "model") {
            auto& p = cfg.params;
            if (key == "theta") p.theta = num(diag, key, value);
            else if (key == "kappa") p.kappa = num(diag, key, value);
            else if (key == "mu") p.mu = num(diag, key, value);
            else if (key == "sigma") p.sigma = num(diag, key, value);
            else if (key == "rho") p.rho = num(diag, key, value);
            else if (key == "y0") p.y0 = num(diag, key, value);
            else if (key == "s0") p.s0 = num(diag, key, value);
            else if (key == "jump_intensity") p.jump.intensity = num(diag, key, value);
            else if (key == "jump_law") {
                if (value == "none") p.jump.size_law = JumpSpec::SizeLaw::None;
                else if (value == "normal") p.jump.size_law = JumpSpec::SizeLaw::Normal;
                else if (value == "one-sided-exp")
                    p.jump.size_law = JumpSpec::SizeLaw::OneSidedExponential;
                else if (value == "two-sided-exp")
                    p.jump.size_law = JumpSpec::SizeLaw::TwoSidedExponential;
                else diag.fail("jump_law must be none|normal|one-sided-exp|two-sided-exp");
            } else if (key == "jump_mean") p.jump.normal_mean = num(diag, key, value);
            else if (key == "jump_sd") p.jump.normal_sd = num(diag, key, value);
            else if (key == "jump_rate") p.jump.exp_rate = num(diag, key, value);
            else if (key == "jump_rate_plus") p.jump.exp_rate_plus = num(diag, key, value);
            else if (key == "jump_rate_minus") p.jump.exp_rate_minus = num(diag, key, value);
            else if (key == "jump_prob_plus") p.jump.prob_plus = num(diag, key, value);
            else diag.fail("unknown key '" + key + "' in [model]");
        } else if (section == "grid") {
            if (key == "T") cfg.grid.horizon = num(diag, key, value);
            else if (key == "n") cfg.grid.steps = static_cast<std::size_t>(uint_value(diag, key, value));
            else diag.fail("unknown key '" + key + "' in [grid]");
        } else if (section == "campaign") {
            if (key == "M") cfg.trajectories = static_cast<std::size_t>(uint_value(diag, key, value));
            else if (key == "seed") cfg.master_seed = uint_value(diag, key, value);
            else if (key == "scheme") {
                if (value == "drift-implicit") cfg.scheme = SchemeKind::DriftImplicit;
                else if (value == "truncated") cfg.scheme = SchemeKind::TruncatedEuler;
                else if (value == "symmetrized") cfg.scheme = SchemeKind::SymmetrizedEuler;
                else diag.fail("scheme must be drift-implicit|truncated|symmetrized");
            } else if (key == "i3") {
                if (value == "increment") cfg.i3_variant = I3Variant::Increment;
                else if (value == "log") cfg.i3_variant = I3Variant::Log;
                else diag.fail("i3 must be increment|log");
            } else if (key == "i45") {
                if (value == "wiener") cfg.i45_variant = I45Variant::Wiener;
                else if (value == "price") cfg.i45_variant = I45Variant::Price;
                else diag.fail("i45 must be wiener|price");
            } else if (key == "regime") {
                if (value == "auto") cfg.regime_override.reset();
                else if (value == "subcritical") cfg.regime_override = Regime::Subcritical;
                else if (value == "critical") cfg.regime_override = Regime::Critical;
                else diag.fail("regime must be auto|subcritical|critical");
            } else diag.fail("unknown key '" + key + "' in [campaign]");
        } else {  // output
            if (key == "dir") cfg.output_dir = value;
            else diag.fail("unknown key '" + key + "' in [output]");
        }
    }

    try {
        cfg.params.validate();
        cfg.grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    return cfg;
}

CampaignConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* law_name(JumpSpec::SizeLaw law) {
    switch (law) {
        case JumpSpec::SizeLaw::None: return "none";
        case JumpSpec::SizeLaw::Normal: return "normal";
        case JumpSpec::SizeLaw::OneSidedExponential: return "one-sided-exp";
        case JumpSpec::SizeLaw::TwoSidedExponential: return "two-sided-exp";
    }
    return "none";
}

const char* scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::DriftImplicit: return "drift-implicit";
        case SchemeKind::TruncatedEuler: return "truncated";
        case SchemeKind::SymmetrizedEuler: return "symmetrized";
    }
    return "drift-implicit";
}

}  // namespace

std::string render_config(const CampaignConfig& cfg) {
    std::ostringstream out;
    const auto& p = cfg.params;
    out << "[model]\n";
    out << "theta = " << fmt(p.theta) << "\n";
    out << "kappa = " << fmt(p.kappa) << "\n";
    out << "mu = " << fmt(p.mu) << "\n";
    out << "sigma = " << fmt(p.sigma) << "\n";
    out << "rho = " << fmt(p.rho) << "\n";
    out << "y0 = " << fmt(p.y0) << "\n";
    out << "s0 = " << fmt(p.s0) << "\n";
    out << "jump_intensity = " << fmt(p.jump.intensity) << "\n";
    out << "jump_law = " << law_name(p.jump.size_law) << "\n";
    out << "jump_mean = " << fmt(p.jump.normal_mean) << "\n";
    out << "jump_sd = " << fmt(p.jump.normal_sd) << "\n";
    out << "jump_rate = " << fmt(p.jump.exp_rate) << "\n";
    out << "jump_rate_plus = " << fmt(p.jump.exp_rate_plus) << "\n";
    out << "jump_rate_minus = " << fmt(p.jump.exp_rate_minus) << "\n";
    out << "jump_prob_plus = " << fmt(p.jump.prob_plus) << "\n";
    out << "\n[grid]\n";
    out << "T = " << fmt(cfg.grid.horizon) << "\n";
    out << "n = " << cfg.grid.steps << "\n";
    out << "\n[campaign]\n";
    out << "M = " << cfg.trajectories << "\n";
    out << "seed = " << cfg.master_seed << "\n";
    out << "scheme = " << scheme_name(cfg.scheme) << "\n";
    out << "i3 = " << (cfg.i3_variant == I3Variant::Increment ? "increment" : "log") << "\n";
    out << "i45 = " << (cfg.i45_variant == I45Variant::Wiener ? "wiener" : "price") << "\n";
    out << "regime = ";
    if (!cfg.regime_override) out << "auto";
    else out << (*cfg.regime_override == Regime::Subcritical ? "subcritical" : "critical");
    out << "\n";
    out << "\n[output]\n";
    out << "dir = " << cfg.output_dir << "\n";
    return out.str();
}

void write_effective_config(const std::string& path, const CampaignConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write effective config: " + path);
    out << render_config(cfg);
}

}  // namespace svjmle::cli
