#pragma once

#include <string>

#include "svjmle/experiments.hpp"

namespace svjmle::cli {

// Declarative key = value config with [model], [grid], [campaign] and
// [output] sections. Numeric values may be arithmetic expressions over
// literals, e, pi, sqrt() and exp(), resolved at parse time, so e.g.
// mu = 1 - sqrt(e) carries no decimal truncation.
CampaignConfig default_config();
CampaignConfig parse_config_text(const std::string& text, const std::string& source_name);
CampaignConfig parse_config_file(const std::string& path);

// Serialize the fully resolved configuration; reparsing reproduces the
// campaign exactly (doubles are printed with %.17g).
std::string render_config(const CampaignConfig& config);
void write_effective_config(const std::string& path, const CampaignConfig& config);

// Expression evaluator used for numeric config values (exposed for tests).
double eval_expression(const std::string& text);

}  // namespace svjmle::cli
