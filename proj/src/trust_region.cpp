#include "trust_region.hpp"

#include <cmath>

namespace divtr {

TrustRegionConfig TrustRegionConfig::defaults(int dim, int n_batch) {
    TrustRegionConfig c;
    c.failure_tolerance =
        static_cast<int>(std::ceil(static_cast<double>(std::max(4, dim)) / n_batch));
    return c;
}

TrustRegionState TrustRegionState::fresh(const TrustRegionConfig& config) {
    TrustRegionState s;
    s.config = config;
    s.base_length = config.length_init;
    return s;
}

Vec side_lengths(const TrustRegionState& state, const GpHyperparams& hyper) {
    const Vec& ls = hyper.lengthscales;
    const double geo_mean = std::exp(ls.array().log().mean());
    return state.base_length * (ls / geo_mean);
}

void update(TrustRegionState& state, bool batch_improved) {
    if (batch_improved) {
        state.failure_count = 0;
        if (++state.success_count == state.config.success_tolerance) {
            state.base_length = std::min(2.0 * state.base_length, state.config.length_max);
            state.success_count = 0;
        }
    } else {
        state.success_count = 0;
        if (++state.failure_count == state.config.failure_tolerance) {
            state.base_length *= 0.5;
            state.failure_count = 0;
        }
    }
    if (state.base_length < state.config.length_min) state.needs_restart = true;
}

Mat generate_candidates(const TrustRegionState& state, const GpHyperparams& hyper, int k,
                        RngStream& rng) {
    if (!state.center)
        throw Error(ErrorCode::invalid_argument, "generate_candidates: center not set");
    const Vec& center = *state.center;
    const int dim = static_cast<int>(center.size());

    const Vec sides = side_lengths(state, hyper);
    const Vec lb = (center - 0.5 * sides).cwiseMax(0.0);
    const Vec ub = (center + 0.5 * sides).cwiseMin(1.0);

    SobolSequence sobol(dim, rng);
    Mat candidates(k, dim);
    std::vector<double> point(dim);
    const double perturb_prob = std::min(20.0 / dim, 1.0);

    for (int i = 0; i < k; ++i) {
        sobol.next(point.data());
        int perturbed = 0;
        for (int j = 0; j < dim; ++j) {
            if (rng.bernoulli(perturb_prob)) {
                candidates(i, j) = lb[j] + point[j] * (ub[j] - lb[j]);
                ++perturbed;
            } else {
                candidates(i, j) = center[j];
            }
        }
        if (perturbed == 0) {
            const int j = static_cast<int>(rng.uniform_index(dim));
            candidates(i, j) = lb[j] + point[j] * (ub[j] - lb[j]);
        }
    }
    return candidates;
}

TrustRegionState restart(const TrustRegionState& state) {
    return TrustRegionState::fresh(state.config);
}

}  // namespace divtr
