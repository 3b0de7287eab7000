#pragma once

#include <string>
#include <vector>

namespace divtr::stats {

struct KruskalWallisResult {
    double h;
    double p;
};

// Rank-based k-group test with tie correction; p from the chi-squared
// approximation with k-1 degrees of freedom. All-identical observations are
// a documented degenerate case returning H = 0, p = 1.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct PairwiseCell {
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    int direction = 0;  // +1: row group outperforms column group (smaller values), -1: worse
    bool significant = false;
};

struct ComparisonResult {
    double kw_h = 0.0;
    double kw_p = 1.0;
    double alpha = 0.05;
    std::vector<std::vector<PairwiseCell>> pairwise;  // k x k, diagonal unused

    // table notation for one column: "2+ 3-" means this group beats group 2
    // and loses to group 3 (groups numbered from 1)
    std::string symbols_for(int group) const;
};

// Pairwise two-sided Mann-Whitney U tests (normal approximation with tie and
// continuity correction), Bonferroni-adjusted by the number of pairs.
ComparisonResult pairwise_compare(const std::vector<std::vector<double>>& groups,
                                  double alpha = 0.05);

// two-sided Mann-Whitney p-value; direction_out = +1 when a's ranks are lower
double mann_whitney_p(const std::vector<double>& a, const std::vector<double>& b,
                      int* direction_out = nullptr);

}  // namespace divtr::stats
