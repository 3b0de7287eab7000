#pragma once

#include <optional>

#include "sobol.hpp"
#include "surrogate.hpp"

namespace divtr {

struct TrustRegionConfig {
    double length_init = 0.8;
    double length_min = 0.0078125;  // 0.5^7
    double length_max = 1.6;
    int success_tolerance = 3;
    int failure_tolerance = 1;  // ceil(max(4, D) / n_batch)

    static TrustRegionConfig defaults(int dim, int n_batch);
};

// Adaptive hypercube in unit-cube coordinates. Doubles after
// success_tolerance consecutive improving batches, halves after
// failure_tolerance consecutive non-improving ones, and demands a restart
// once the base length drops below length_min.
struct TrustRegionState {
    TrustRegionConfig config;
    double base_length = 0.8;
    std::optional<Vec> center;  // unit-cube coordinates; unset until the caller picks one
    int success_count = 0;
    int failure_count = 0;
    bool needs_restart = false;

    static TrustRegionState fresh(const TrustRegionConfig& config);

    bool live() const { return !needs_restart; }
};

// Per-dimension side lengths: base_length * lambda_i / geometric_mean(lambda),
// so anisotropy follows the fitted ARD lengthscales while the box volume
// stays base_length^D.
Vec side_lengths(const TrustRegionState& state, const GpHyperparams& hyper);

// Success/failure accounting; see TrustRegionState.
void update(TrustRegionState& state, bool batch_improved);

// k scrambled-Sobol candidates inside the trust-region box intersected with
// the unit cube. Each candidate keeps the center coordinate except with
// probability min(20/D, 1) per dimension; at least one coordinate is always
// perturbed.
Mat generate_candidates(const TrustRegionState& state, const GpHyperparams& hyper, int k,
                        RngStream& rng);

// Fresh region with the same configuration; the center stays unset until the
// caller supplies new initial points.
TrustRegionState restart(const TrustRegionState& state);

}  // namespace divtr
