#include "divturbo.hpp"

#include <algorithm>
#include <limits>

namespace divtr {

namespace {

constexpr double kImprovementTolerance = 1e-3;

// best value among points clearing the screening threshold; +inf when none do
double best_screened_value(const std::vector<Observation>& obs, const EliteSet& screen) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : obs)
        if (min_distance_to_set(o.x_phys, screen) >= screen.tau) best = std::min(best, o.value);
    return best;
}

bool improved_over(double batch_best, double incumbent) {
    if (!std::isfinite(batch_best)) return false;
    if (!std::isfinite(incumbent)) return true;
    return batch_best < incumbent - kImprovementTolerance * std::abs(incumbent);
}

}  // namespace

DivTurboConfig DivTurboConfig::defaults(int dim, double tau, std::uint64_t rng_seed) {
    DivTurboConfig c;
    c.dim = dim;
    c.tau = tau;
    c.rng_seed = rng_seed;
    c.tr = TrustRegionConfig::defaults(dim, c.n_batch);
    return c;
}

std::vector<int> select_batch(const Mat& candidates_unit, const GpModel& model,
                              const EliteSet& elites, int n_batch, const Domain& domain,
                              RngStream& rng) {
    const int k = static_cast<int>(candidates_unit.rows());
    if (n_batch > k)
        throw Error(ErrorCode::invalid_argument, "select_batch: n_batch exceeds candidate count");

    std::vector<int> feasible;
    std::vector<std::pair<double, int>> infeasible;  // (min distance, index)
    for (int i = 0; i < k; ++i) {
        const Vec phys = domain.from_unit(candidates_unit.row(i).transpose());
        const double d = min_distance_to_set(phys, elites);
        if (d >= elites.tau)
            feasible.push_back(i);
        else
            infeasible.emplace_back(d, i);
    }

    if (static_cast<int>(feasible.size()) >= n_batch) {
        Mat pool(feasible.size(), candidates_unit.cols());
        for (size_t i = 0; i < feasible.size(); ++i) pool.row(i) = candidates_unit.row(feasible[i]);
        std::vector<int> picked = thompson_select(model, pool, n_batch, rng);
        for (int& idx : picked) idx = feasible[idx];
        return picked;
    }

    // too few feasible candidates: take them all, then the farthest infeasible ones
    std::vector<int> out = feasible;
    std::sort(infeasible.begin(), infeasible.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [d, idx] : infeasible) {
        if (static_cast<int>(out.size()) == n_batch) break;
        out.push_back(idx);
    }
    return out;
}

namespace detail {

std::vector<ScoredPoint> to_scored(const std::vector<Observation>& archive) {
    std::vector<ScoredPoint> pts;
    pts.reserve(archive.size());
    for (const auto& o : archive) pts.push_back({o.x_phys, o.value});
    return pts;
}

std::vector<Observation> region_iteration(BudgetedEvaluator& evaluator,
                                          std::vector<Observation>& archive,
                                          TrustRegionState& tr, const EliteSet& screen,
                                          const DivTurboConfig& config,
                                          std::optional<GpHyperparams>& warm_hyper,
                                          RngStream& rng, long long& next_index,
                                          const std::vector<Observation>* fit_set) {
    const Domain& domain = evaluator.objective().domain;
    const std::vector<Observation>& train = fit_set ? *fit_set : archive;

    Mat x(train.size(), config.dim);
    Vec y(train.size());
    for (size_t i = 0; i < train.size(); ++i) {
        x.row(i) = train[i].x_unit.transpose();
        y[i] = train[i].value;
    }
    const GpModel model = fit_gp(x, y, rng, warm_hyper ? &*warm_hyper : nullptr);
    warm_hyper = model.hyper;

    const Mat candidates = generate_candidates(tr, model.hyper, config.candidates(), rng);
    const int n_batch = static_cast<int>(std::min<long long>(config.n_batch, evaluator.remaining()));
    const std::vector<int> picked = select_batch(candidates, model, screen, n_batch, domain, rng);

    const double incumbent = best_screened_value(archive, screen);

    std::vector<Observation> fresh;
    fresh.reserve(picked.size());
    for (int idx : picked) {
        Observation o;
        o.x_unit = candidates.row(idx).transpose();
        o.x_phys = domain.from_unit(o.x_unit);
        o.value = evaluator.evaluate(o.x_phys);
        o.index = next_index++;
        archive.push_back(o);
        fresh.push_back(std::move(o));
    }

    update(tr, improved_over(best_screened_value(fresh, screen), incumbent));
    return fresh;
}

}  // namespace detail

Selection run_divturbo(BudgetedEvaluator& evaluator, const EliteSet& elites,
                       const DivTurboConfig& config, RunState& state, bool fresh) {
    const Domain& domain = evaluator.objective().domain;
    if (config.dim != domain.dim)
        throw dimension_mismatch("run_divturbo: config dim does not match the objective");

    if (fresh) {
        state = RunState{};
        state.rng = RngStream(config.rng_seed);
        if (evaluator.remaining() < config.init_points())
            throw budget_exhausted("budget below the initial batch size");
    }
    const long long used_before = evaluator.used();

    while (evaluator.remaining() > 0) {
        TrustRegionState tr = TrustRegionState::fresh(config.tr);
        if (!state.x_global.empty()) ++state.restarts;

        std::vector<Observation> x_tr;
        const int n_init =
            static_cast<int>(std::min<long long>(config.init_points(), evaluator.remaining()));
        for (const Vec& p : sample_uniform(domain, n_init, state.rng)) {
            Observation o{domain.to_unit(p), p, evaluator.evaluate(p), state.next_index++};
            x_tr.push_back(o);
            state.x_global.push_back(std::move(o));
        }

        int infeasible_streak = 0;
        while (evaluator.remaining() > 0 && tr.live()) {
            const Selection center = select_center(detail::to_scored(x_tr), elites);
            if (center.feasible) {
                infeasible_streak = 0;
            } else if (++infeasible_streak >= config.consecutive_infeasible_limit) {
                ++state.forced_restarts;  // region abandoned; outer loop reseeds
                break;
            }
            tr.center = x_tr[center.index].x_unit;

            auto fresh_obs = detail::region_iteration(
                evaluator, x_tr, tr, elites, config, state.last_hyper, state.rng,
                state.next_index, config.fit_on_global ? &state.x_global : nullptr);
            for (auto& o : fresh_obs) state.x_global.push_back(std::move(o));
        }
    }

    state.evals_used += evaluator.used() - used_before;
    return best_diverse(detail::to_scored(state.x_global), elites);
}

}  // namespace divtr
