#pragma once

#include "divturbo.hpp"

namespace divtr {

// Drives m runs into a diverse elite set. Per-run budget is
// floor(B / m) for the sequential driver and floor(B / (m * max_phases))
// per phase for the interleaving one; the remainder of B is discarded.
struct MetaConfig {
    int m = 10;
    long long total_budget = 0;
    double tau = 0.0;
    int max_phases = 5;  // interleaving driver only
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds;  // per-run overrides; derived from base_seed when empty

    int n0 = 0;  // 0 -> 2 * dim
    int n_batch = 4;
    bool fit_on_global = false;
    // replace an interleaved slot only when the resumed run improves on it or
    // repairs an infeasible occupant (default replaces unconditionally)
    bool guarded_replacement = false;

    std::uint64_t seed_for_run(int run_index) const;
};

struct RunLog {
    int run_index;
    int phase;  // 1-based; sequential runs log phase 1
    double value;
    bool feasible;
    long long evals_used;
};

struct MetaResult {
    EliteSet elites;
    std::vector<bool> elite_feasible;  // per slot, from the producing selection
    std::vector<RunLog> logs;
    long long total_evals = 0;
};

// m runs in order, each constrained by the elites of its predecessors.
MetaResult run_sequential(const ObjectiveFunction& objective, const MetaConfig& config);

// m runs interleaved over max_phases phases. Phase 1 appends each run's best
// to the shared elite set; later phases resume run i against the current set
// with slot i masked out and write the result back into slot i.
MetaResult run_interleaved(const ObjectiveFunction& objective, const MetaConfig& config);

}  // namespace divtr
