#pragma once

#include "divturbo.hpp"
#include "meta.hpp"

namespace divtr {

// Rank-ordered baseline: m trust regions advance in lockstep on a shared
// budget. Region i's center is chosen from its own archive under the
// two-branch rule against the centers of regions 0..i-1 picked this
// iteration; candidate selection itself is unconstrained.
struct RobotConfig {
    int m = 10;
    long long total_budget = 0;
    double tau = 0.0;
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds;  // per-region overrides

    int n0 = 0;  // 0 -> 2 * dim
    int n_batch = 4;

    std::uint64_t seed_for_region(int region_index) const;
};

struct RobotResult {
    EliteSet elites;  // final rank-ordered centers with their values
    std::vector<bool> center_feasible;
    long long total_evals = 0;
    std::vector<RunLog> logs;  // final center per region
};

RobotResult run_robot(const ObjectiveFunction& objective, const RobotConfig& config);

}  // namespace divtr
