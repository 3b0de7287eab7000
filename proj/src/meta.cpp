#include "meta.hpp"

namespace divtr {

namespace {

DivTurboConfig make_run_config(const MetaConfig& meta, int dim, std::uint64_t seed) {
    DivTurboConfig c = DivTurboConfig::defaults(dim, meta.tau, seed);
    if (meta.n0 > 0) c.n0 = meta.n0;
    if (meta.n_batch > 0) {
        c.n_batch = meta.n_batch;
        c.tr = TrustRegionConfig::defaults(dim, meta.n_batch);
    }
    c.fit_on_global = meta.fit_on_global;
    return c;
}

void check_budget(long long per_run, int init_points, const char* driver) {
    if (per_run < init_points)
        throw insufficient_budget(std::string(driver) +
                                  ": per-run budget cannot cover the initial batch");
}

}  // namespace

std::uint64_t MetaConfig::seed_for_run(int run_index) const {
    if (run_index < static_cast<int>(seeds.size())) return seeds[run_index];
    return derive_seed(base_seed, static_cast<std::uint64_t>(run_index));
}

MetaResult run_sequential(const ObjectiveFunction& objective, const MetaConfig& config) {
    const int dim = objective.domain.dim;
    const long long per_run = config.total_budget / config.m;
    const DivTurboConfig probe = make_run_config(config, dim, 0);
    check_budget(per_run, probe.init_points(), "run_sequential");

    MetaResult result;
    result.elites.tau = config.tau;

    for (int i = 0; i < config.m; ++i) {
        const DivTurboConfig run_cfg = make_run_config(config, dim, config.seed_for_run(i));
        BudgetedEvaluator evaluator(objective, per_run);
        RunState state;
        const Selection best = run_divturbo(evaluator, result.elites, run_cfg, state, true);

        result.elites.add(best.x, best.value);
        result.elite_feasible.push_back(best.feasible);
        result.logs.push_back({i, 1, best.value, best.feasible, evaluator.used()});
        result.total_evals += evaluator.used();
    }
    return result;
}

MetaResult run_interleaved(const ObjectiveFunction& objective, const MetaConfig& config) {
    const int dim = objective.domain.dim;
    const long long per_phase =
        config.total_budget / (static_cast<long long>(config.m) * config.max_phases);
    const DivTurboConfig probe = make_run_config(config, dim, 0);
    check_budget(per_phase, probe.init_points(), "run_interleaved");

    MetaResult result;
    result.elites.tau = config.tau;
    std::vector<RunState> states(config.m);

    for (int phase = 1; phase <= config.max_phases; ++phase) {
        for (int i = 0; i < config.m; ++i) {
            const DivTurboConfig run_cfg = make_run_config(config, dim, config.seed_for_run(i));
            BudgetedEvaluator evaluator(objective, per_phase);

            if (phase == 1) {
                const Selection best = run_divturbo(evaluator, result.elites, run_cfg, states[i], true);
                result.elites.add(best.x, best.value);
                result.elite_feasible.push_back(best.feasible);
                result.logs.push_back({i, phase, best.value, best.feasible, evaluator.used()});
            } else {
                // the run must not be fenced out by its own previous answer
                const EliteSet reference = result.elites.without(i);
                const Selection best = run_divturbo(evaluator, reference, run_cfg, states[i], false);

                const bool replace =
                    !config.guarded_replacement || !result.elite_feasible[i] ||
                    best.value <= result.elites.elites[i].value;
                if (replace) {
                    result.elites.elites[i] = {best.x, best.value};
                    result.elite_feasible[i] = best.feasible;
                }
                result.logs.push_back({i, phase, best.value, best.feasible, evaluator.used()});
            }
            result.total_evals += evaluator.used();
        }
    }
    return result;
}

}  // namespace divtr
