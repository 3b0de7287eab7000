#pragma once

#include <Eigen/Core>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace divtr {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Hyperparameter box enforced at fit time (unit-cube inputs, standardized targets).
namespace gp_bounds {
inline constexpr double kLengthscaleMin = 0.005;
inline constexpr double kLengthscaleMax = 2.0;
inline constexpr double kSignalMin = 0.05;
inline constexpr double kSignalMax = 20.0;
inline constexpr double kNoiseMin = 5e-4;
inline constexpr double kNoiseMax = 0.2;
}  // namespace gp_bounds

struct GpHyperparams {
    Vec lengthscales;  // per dimension (ARD)
    double signal_variance = 1.0;
    double noise_variance = 5e-3;

    static GpHyperparams defaults(int dim);
};

// Gaussian-process posterior over observed points. Immutable once fitted.
struct GpModel {
    Mat train_x;  // n x D, unit-cube coordinates
    Vec train_y_standardized;
    double y_mean = 0.0;
    double y_std = 1.0;
    GpHyperparams hyper;
    Mat chol_factor;  // lower triangular, K + (noise + jitter) I = L L^T
    Vec alpha;        // (K + (noise + jitter) I)^{-1} y_standardized
    double jitter = 0.0;

    int n() const { return static_cast<int>(train_x.rows()); }
    int dim() const { return static_cast<int>(train_x.cols()); }
};

struct GpPosterior {
    Vec mean;      // de-standardized
    Vec variance;  // de-standardized, diagonal of the posterior covariance
};

// Matern-5/2 ARD cross-covariance (without noise term).
Mat matern52_cross(const Mat& a, const Mat& b, const GpHyperparams& hyper);

struct LmlValueGrad {
    double value;
    Vec grad;  // d/d(log lengthscale_1..D, log signal_variance, log noise_variance)
};

// Log marginal likelihood of standardized targets and its gradient in
// log-parameter space. Throws singular_kernel if the jitter ladder
// (1e-8 escalating tenfold to 1e-4) cannot factorize K + noise I.
LmlValueGrad log_marginal_likelihood(const Mat& x, const Vec& y_standardized,
                                     const GpHyperparams& hyper);

// ML-II fit: multi-start projected gradient ascent (3 starts, 50 iterations
// each) within the hyperparameter box. The first start is prior_hyper when
// given; remaining starts are log-uniform in the box.
GpModel fit_gp(const Mat& x, const Vec& y, RngStream& rng,
               const GpHyperparams* prior_hyper = nullptr);

GpPosterior gp_posterior(const GpModel& model, const Mat& query_x);

// n_batch distinct candidate indices: each joint posterior sample path
// contributes its minimizer, walking to the path's next-best candidate on
// duplicates.
std::vector<int> thompson_select(const GpModel& model, const Mat& candidates, int n_batch,
                                 RngStream& rng);

}  // namespace divtr
