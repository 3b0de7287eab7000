#include "stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace divtr::stats {

namespace {

// midranks of the pooled sample plus the tie-correction sum of (t^3 - t)
struct Ranked {
    std::vector<double> ranks;  // aligned with the pooled values
    double tie_term = 0.0;
};

Ranked midranks(const std::vector<double>& pooled) {
    const size_t n = pooled.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pooled[a] < pooled[b]; });

    Ranked out;
    out.ranks.resize(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double rank = 0.5 * (i + j) + 1.0;  // average of 1-based positions i+1..j+1
        for (size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

double chi_squared_sf(double x, int dof) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    const int k = static_cast<int>(groups.size());
    if (k < 2) throw Error(ErrorCode::invalid_argument, "kruskal_wallis: need at least 2 groups");
    for (const auto& g : groups)
        if (g.size() < 2)
            throw Error(ErrorCode::invalid_argument, "kruskal_wallis: groups need >= 2 observations");

    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double n = static_cast<double>(pooled.size());

    const Ranked ranked = midranks(pooled);
    const double correction = 1.0 - ranked.tie_term / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0};  // every observation identical

    double stat = 0.0;
    size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (size_t i = 0; i < g.size(); ++i) rank_sum += ranked.ranks[offset + i];
        stat += rank_sum * rank_sum / g.size();
        offset += g.size();
    }
    const double h = (12.0 / (n * (n + 1.0)) * stat - 3.0 * (n + 1.0)) / correction;
    return {h, chi_squared_sf(h, k - 1)};
}

double mann_whitney_p(const std::vector<double>& a, const std::vector<double>& b,
                      int* direction_out) {
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const double n = n1 + n2;

    const Ranked ranked = midranks(pooled);
    double rank_sum_a = 0.0;
    for (size_t i = 0; i < a.size(); ++i) rank_sum_a += ranked.ranks[i];

    const double u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    const double mean_u = n1 * n2 / 2.0;
    if (direction_out) *direction_out = u < mean_u ? +1 : (u > mean_u ? -1 : 0);

    const double var_u =
        n1 * n2 / 12.0 * ((n + 1.0) - ranked.tie_term / (n * (n - 1.0)));
    if (var_u <= 0.0) return 1.0;  // all observations tied

    double z = u - mean_u;
    z -= 0.5 * (z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0));  // continuity correction
    z /= std::sqrt(var_u);
    return std::min(1.0, 2.0 * normal_sf(std::abs(z)));
}

ComparisonResult pairwise_compare(const std::vector<std::vector<double>>& groups, double alpha) {
    const int k = static_cast<int>(groups.size());
    const KruskalWallisResult kw = kruskal_wallis(groups);

    ComparisonResult out;
    out.kw_h = kw.h;
    out.kw_p = kw.p;
    out.alpha = alpha;
    out.pairwise.assign(k, std::vector<PairwiseCell>(k));

    const double n_pairs = k * (k - 1) / 2.0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            int direction = 0;
            const double p = mann_whitney_p(groups[i], groups[j], &direction);
            PairwiseCell cell;
            cell.p_raw = p;
            cell.p_adjusted = std::min(1.0, p * n_pairs);
            cell.significant = cell.p_adjusted < alpha;
            cell.direction = cell.significant ? direction : 0;
            out.pairwise[i][j] = cell;
            cell.direction = -cell.direction;
            out.pairwise[j][i] = cell;
        }
    }
    return out;
}

std::string ComparisonResult::symbols_for(int group) const {
    std::string s;
    const int k = static_cast<int>(pairwise.size());
    for (int other = 0; other < k; ++other) {
        if (other == group) continue;
        const PairwiseCell& cell = pairwise[group][other];
        if (!cell.significant) continue;
        if (!s.empty()) s += ' ';
        s += std::to_string(other + 1);
        s += cell.direction > 0 ? '+' : '-';
    }
    return s;
}

}  // namespace divtr::stats
