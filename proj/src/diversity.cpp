#include "diversity.hpp"

#include <limits>

namespace divtr {

double distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw dimension_mismatch("distance: vectors differ in dimension");
    return (x - y).norm();
}

double min_distance_to_set(const Vec& x, const EliteSet& elites) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : elites.elites) best = std::min(best, distance(x, e.x));
    return best;
}

bool EliteSet::pairwise_feasible() const {
    for (size_t i = 0; i < elites.size(); ++i)
        for (size_t j = i + 1; j < elites.size(); ++j)
            if (distance(elites[i].x, elites[j].x) < tau) return false;
    return true;
}

EliteSet EliteSet::without(int index) const {
    EliteSet out;
    out.tau = tau;
    for (int i = 0; i < size(); ++i)
        if (i != index) out.elites.push_back(elites[i]);
    return out;
}

std::vector<int> filter_tau_indices(const std::vector<Vec>& points, const EliteSet& elites) {
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (min_distance_to_set(points[i], elites) >= elites.tau) keep.push_back(i);
    return keep;
}

std::vector<Vec> filter_tau(const std::vector<Vec>& points, const EliteSet& elites) {
    std::vector<Vec> out;
    for (int i : filter_tau_indices(points, elites)) out.push_back(points[i]);
    return out;
}

Selection best_diverse(const std::vector<ScoredPoint>& points, const EliteSet& elites) {
    if (points.empty()) throw empty_input("best_diverse: no points");

    int best = -1;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        if (min_distance_to_set(points[i].x, elites) < elites.tau) continue;
        if (best < 0 || points[i].value < points[best].value) best = i;
    }
    if (best >= 0) return {points[best].x, points[best].value, true, best};

    // no point clears tau: fall back to the one farthest from the elites
    double best_dist = -1.0;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        const double d = min_distance_to_set(points[i].x, elites);
        if (d > best_dist || (d == best_dist && points[i].value < points[best].value)) {
            best = i;
            best_dist = d;
        }
    }
    return {points[best].x, points[best].value, false, best};
}

Selection select_center(const std::vector<ScoredPoint>& tr_points, const EliteSet& elites) {
    if (tr_points.empty()) throw empty_input("select_center: empty trust-region archive");
    return best_diverse(tr_points, elites);
}

}  // namespace divtr
