#pragma once

#include <string>
#include <vector>

#include "svjmle/experiments.hpp"

namespace svjmle::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDegenerate = 2;
inline constexpr int kExitFailureRate = 3;
inline constexpr int kExitRegime = 4;

int cmd_simulate(const CampaignConfig& config);
int cmd_estimate(const CampaignConfig& config);
int cmd_montecarlo(const CampaignConfig& config, const std::vector<double>& sweep_horizons);
int cmd_limitcheck(const CampaignConfig& config, const std::string& reference);

}  // namespace svjmle::cli
