#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diversity.hpp"
#include "trust_region.hpp"

namespace divtr {

// Configuration for one diversity-constrained trust-region run.
struct DivTurboConfig {
    int dim = 0;
    double tau = 0.0;
    int n0 = 0;               // initial batch size; 0 -> 2 * dim
    int n_batch = 4;
    int candidate_count = 0;  // 0 -> min(100 * dim, 5000)
    int consecutive_infeasible_limit = 3;
    bool fit_on_global = false;  // fit the surrogate on the full run archive instead of the TR archive
    std::uint64_t rng_seed = 0;
    TrustRegionConfig tr;

    static DivTurboConfig defaults(int dim, double tau, std::uint64_t rng_seed);

    int init_points() const { return n0 > 0 ? n0 : 2 * dim; }
    int candidates() const {
        return candidate_count > 0 ? candidate_count : std::min(100 * dim, 5000);
    }
};

struct Observation {
    Vec x_unit;
    Vec x_phys;
    double value;
    long long index;  // evaluation order within the run
};

// Mutable state of one run; kept across pause/resume so the interleaving
// driver can continue a run against a new elite set. Resumption opens a
// fresh trust region but retains the global archive and the fitted
// hyperparameters.
struct RunState {
    std::vector<Observation> x_global;
    RngStream rng;
    std::optional<GpHyperparams> last_hyper;
    long long evals_used = 0;
    long long next_index = 0;
    int restarts = 0;         // trust regions opened beyond the first
    int forced_restarts = 0;  // restarts triggered by consecutive infeasible center selections
};

// Diversity-aware batch selection: Thompson-select from the tau-feasible
// candidates; when they are fewer than n_batch, fill with the infeasible
// candidates farthest from the elite set.
std::vector<int> select_batch(const Mat& candidates_unit, const GpModel& model,
                              const EliteSet& elites, int n_batch, const Domain& domain,
                              RngStream& rng);

// Execute (or resume, fresh=false) one run against a fixed elite set,
// consuming the evaluator's remaining budget. Returns the best diverse
// solution over the run's whole archive.
Selection run_divturbo(BudgetedEvaluator& evaluator, const EliteSet& elites,
                       const DivTurboConfig& config, RunState& state, bool fresh = true);

namespace detail {

// One surrogate-guided iteration of a region: fit on the archive (or
// fit_set when given), propose candidates around the region center,
// tau-screen against `screen`, evaluate, and update the region lengths.
// New observations are appended to the archive and also returned.
std::vector<Observation> region_iteration(BudgetedEvaluator& evaluator,
                                          std::vector<Observation>& archive,
                                          TrustRegionState& tr, const EliteSet& screen,
                                          const DivTurboConfig& config,
                                          std::optional<GpHyperparams>& warm_hyper,
                                          RngStream& rng, long long& next_index,
                                          const std::vector<Observation>* fit_set = nullptr);

std::vector<ScoredPoint> to_scored(const std::vector<Observation>& archive);

}  // namespace detail

}  // namespace divtr
