#include "robot.hpp"

namespace divtr {

namespace {

struct Region {
    TrustRegionState tr;
    std::vector<Observation> archive;
    RngStream rng;
    std::optional<GpHyperparams> hyper;
    long long next_index = 0;
};

void seed_region(Region& region, BudgetedEvaluator& evaluator, int n_init) {
    const Domain& domain = evaluator.objective().domain;
    region.archive.clear();
    for (const Vec& p : sample_uniform(domain, n_init, region.rng))
        region.archive.push_back({domain.to_unit(p), p, evaluator.evaluate(p), region.next_index++});
}

}  // namespace

std::uint64_t RobotConfig::seed_for_region(int region_index) const {
    if (region_index < static_cast<int>(seeds.size())) return seeds[region_index];
    return derive_seed(base_seed, static_cast<std::uint64_t>(region_index));
}

RobotResult run_robot(const ObjectiveFunction& objective, const RobotConfig& config) {
    const int dim = objective.domain.dim;
    DivTurboConfig step_cfg = DivTurboConfig::defaults(dim, config.tau, 0);
    if (config.n0 > 0) step_cfg.n0 = config.n0;
    if (config.n_batch > 0) {
        step_cfg.n_batch = config.n_batch;
        step_cfg.tr = TrustRegionConfig::defaults(dim, config.n_batch);
    }
    const int n_init = step_cfg.init_points();

    if (config.total_budget < static_cast<long long>(config.m) * n_init)
        throw insufficient_budget("run_robot: budget cannot initialize every region");

    BudgetedEvaluator evaluator(objective, config.total_budget);
    // candidate selection is unconstrained; only center choice sees the ranking
    const EliteSet unconstrained{config.tau, {}};

    std::vector<Region> regions(config.m);
    for (int i = 0; i < config.m; ++i) {
        regions[i].tr = TrustRegionState::fresh(step_cfg.tr);
        regions[i].rng = RngStream(config.seed_for_region(i));
        seed_region(regions[i], evaluator, n_init);
    }

    while (evaluator.remaining() > 0) {
        EliteSet higher_centers{config.tau, {}};
        for (int i = 0; i < config.m && evaluator.remaining() > 0; ++i) {
            Region& region = regions[i];
            const Selection center = select_center(detail::to_scored(region.archive), higher_centers);
            higher_centers.add(center.x, center.value);
            region.tr.center = region.archive[center.index].x_unit;

            detail::region_iteration(evaluator, region.archive, region.tr, unconstrained,
                                     step_cfg, region.hyper, region.rng, region.next_index);

            if (region.tr.needs_restart && evaluator.remaining() > 0) {
                region.tr = restart(region.tr);
                seed_region(region, evaluator,
                            static_cast<int>(std::min<long long>(n_init, evaluator.remaining())));
            }
        }
    }

    // final rank-ordered pass over the finished archives
    RobotResult result;
    result.elites.tau = config.tau;
    for (int i = 0; i < config.m; ++i) {
        const Selection center = select_center(detail::to_scored(regions[i].archive), result.elites);
        result.elites.add(center.x, center.value);
        result.center_feasible.push_back(center.feasible);
        result.logs.push_back({i, 1, center.value, center.feasible, 0});
    }
    result.total_evals = evaluator.used();
    return result;
}

}  // namespace divtr
