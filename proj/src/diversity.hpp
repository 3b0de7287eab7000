#pragma once

#include <vector>

#include "objectives.hpp"

namespace divtr {

struct Elite {
    Vec x;  // physical coordinates
    double value;
};

// Reference set of diverse elites with the governing distance threshold.
// Entries are kept in insertion order. The fallback branch of best-diverse
// selection can admit sub-threshold pairs, so feasibility is observable.
struct EliteSet {
    double tau = 0.0;
    std::vector<Elite> elites;

    bool empty() const { return elites.empty(); }
    int size() const { return static_cast<int>(elites.size()); }
    void add(Vec x, double value) { elites.push_back({std::move(x), value}); }

    // all pairwise distances >= tau
    bool pairwise_feasible() const;

    // copy with slot `index` removed; used when a run must not be constrained
    // by its own previous answer
    EliteSet without(int index) const;
};

struct ScoredPoint {
    Vec x;  // physical coordinates
    double value;
};

struct Selection {
    Vec x;
    double value;
    bool feasible;  // true when the threshold branch was taken
    int index;      // position in the input list
};

double distance(const Vec& x, const Vec& y);
double min_distance_to_set(const Vec& x, const EliteSet& elites);

// points at distance >= tau from every elite, in input order
std::vector<Vec> filter_tau(const std::vector<Vec>& points, const EliteSet& elites);
std::vector<int> filter_tau_indices(const std::vector<Vec>& points, const EliteSet& elites);

// Two-branch best-diverse rule: minimum value over the threshold-feasible
// subset when it is nonempty, otherwise the point farthest from the elite
// set regardless of value. Ties resolve to the smaller value, then to the
// earlier evaluation index.
Selection best_diverse(const std::vector<ScoredPoint>& points, const EliteSet& elites);

// Same rule restricted to a trust region's own archive; the caller tracks
// consecutive infeasible selections to trigger restarts.
Selection select_center(const std::vector<ScoredPoint>& tr_points, const EliteSet& elites);

}  // namespace divtr
