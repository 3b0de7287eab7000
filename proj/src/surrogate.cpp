#include "surrogate.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace divtr {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kJitterStart = 1e-8;
constexpr double kJitterMax = 1e-4;

// scaled pairwise distance r, r^2 = sum_d (a_d - b_d)^2 / lambda_d^2
Mat scaled_distance(const Mat& a, const Mat& b, const Vec& lengthscales) {
    const Mat as = a.array().rowwise() / lengthscales.transpose().array();
    const Mat bs = b.array().rowwise() / lengthscales.transpose().array();
    Mat sq = (-2.0 * as * bs.transpose()).colwise() + as.rowwise().squaredNorm();
    sq.rowwise() += bs.rowwise().squaredNorm().transpose();
    return sq.cwiseMax(0.0).cwiseSqrt();
}

Mat matern52_from_r(const Mat& r, double signal_variance) {
    return signal_variance *
           ((1.0 + kSqrt5 * r.array() + (5.0 / 3.0) * r.array().square()) *
            (-kSqrt5 * r.array()).exp());
}

// Cholesky of K + (noise + jitter) I with escalating jitter.
struct Factorization {
    Eigen::LLT<Mat> llt;
    double jitter;
};

Factorization factorize(const Mat& kernel, double noise_variance) {
    for (double jitter = kJitterStart; jitter <= kJitterMax * (1.0 + 1e-12); jitter *= 10.0) {
        Mat k = kernel;
        k.diagonal().array() += noise_variance + jitter;
        Eigen::LLT<Mat> llt(k);
        if (llt.info() == Eigen::Success) return {std::move(llt), jitter};
    }
    throw singular_kernel("kernel matrix not positive definite after jitter escalation");
}

Vec clamp_log_params(Vec theta, int dim) {
    for (int j = 0; j < dim; ++j)
        theta[j] = std::clamp(theta[j], std::log(gp_bounds::kLengthscaleMin),
                              std::log(gp_bounds::kLengthscaleMax));
    theta[dim] = std::clamp(theta[dim], std::log(gp_bounds::kSignalMin),
                            std::log(gp_bounds::kSignalMax));
    theta[dim + 1] = std::clamp(theta[dim + 1], std::log(gp_bounds::kNoiseMin),
                                std::log(gp_bounds::kNoiseMax));
    return theta;
}

GpHyperparams hyper_from_log(const Vec& theta, int dim) {
    GpHyperparams h;
    h.lengthscales = theta.head(dim).array().exp();
    h.signal_variance = std::exp(theta[dim]);
    h.noise_variance = std::exp(theta[dim + 1]);
    return h;
}

Vec log_from_hyper(const GpHyperparams& h) {
    const int dim = static_cast<int>(h.lengthscales.size());
    Vec theta(dim + 2);
    theta.head(dim) = h.lengthscales.array().log();
    theta[dim] = std::log(h.signal_variance);
    theta[dim + 1] = std::log(h.noise_variance);
    return theta;
}

double lml_value_only(const Mat& x, const Vec& y, const GpHyperparams& hyper) {
    const Mat kf = matern52_cross(x, x, hyper);
    const Factorization fac = factorize(kf, hyper.noise_variance);
    const Vec alpha = fac.llt.solve(y);
    const double logdet = fac.llt.matrixLLT().diagonal().array().log().sum();
    return -0.5 * y.dot(alpha) - logdet -
           0.5 * y.size() * std::log(2.0 * std::numbers::pi);
}

}  // namespace

GpHyperparams GpHyperparams::defaults(int dim) {
    GpHyperparams h;
    h.lengthscales = Vec::Constant(dim, 0.5);
    h.signal_variance = 1.0;
    h.noise_variance = 5e-3;
    return h;
}

Mat matern52_cross(const Mat& a, const Mat& b, const GpHyperparams& hyper) {
    return matern52_from_r(scaled_distance(a, b, hyper.lengthscales), hyper.signal_variance);
}

LmlValueGrad log_marginal_likelihood(const Mat& x, const Vec& y, const GpHyperparams& hyper) {
    const int n = static_cast<int>(x.rows());
    const int dim = static_cast<int>(x.cols());

    const Mat r = scaled_distance(x, x, hyper.lengthscales);
    const Mat kf = matern52_from_r(r, hyper.signal_variance);
    const Factorization fac = factorize(kf, hyper.noise_variance);

    const Vec alpha = fac.llt.solve(y);
    const double logdet = fac.llt.matrixLLT().diagonal().array().log().sum();

    LmlValueGrad out;
    out.value = -0.5 * y.dot(alpha) - logdet - 0.5 * n * std::log(2.0 * std::numbers::pi);
    out.grad.resize(dim + 2);

    // grad_theta = 0.5 tr((alpha alpha^T - K^{-1}) dK/dtheta)
    Mat a = -fac.llt.solve(Mat::Identity(n, n));
    a.noalias() += alpha * alpha.transpose();

    // dK/d(log lambda_j) = (5/3) sigma_f^2 (1 + sqrt5 r) exp(-sqrt5 r) d_j^2 / lambda_j^2
    const Mat b = a.array() * (5.0 / 3.0) * hyper.signal_variance *
                  (1.0 + kSqrt5 * r.array()) * (-kSqrt5 * r.array()).exp();
    const Vec row_sums = b.rowwise().sum();
    for (int j = 0; j < dim; ++j) {
        const Vec col = x.col(j);
        const double q =
            2.0 * col.array().square().matrix().dot(row_sums) - 2.0 * col.dot(b * col);
        out.grad[j] = 0.5 * q / (hyper.lengthscales[j] * hyper.lengthscales[j]);
    }
    out.grad[dim] = 0.5 * a.cwiseProduct(kf).sum();
    out.grad[dim + 1] = 0.5 * hyper.noise_variance * a.trace();
    return out;
}

GpModel fit_gp(const Mat& x, const Vec& y, RngStream& rng, const GpHyperparams* prior_hyper) {
    const int n = static_cast<int>(x.rows());
    const int dim = static_cast<int>(x.cols());
    if (n < 2) throw Error(ErrorCode::invalid_argument, "fit_gp: need at least 2 observations");
    if (y.size() != n) throw dimension_mismatch("fit_gp: x/y size mismatch");
    if (!y.allFinite()) throw Error(ErrorCode::invalid_argument, "fit_gp: non-finite targets");
    if ((x.array() < -1e-9).any() || (x.array() > 1.0 + 1e-9).any())
        throw Error(ErrorCode::invalid_argument, "fit_gp: inputs must lie in the unit cube");

    GpModel model;
    model.train_x = x;
    model.y_mean = y.mean();
    Vec centered = y.array() - model.y_mean;
    double std = std::sqrt(centered.squaredNorm() / n);
    if (std < 1e-12) std = 1.0;  // constant targets: skip standardization of the residual
    model.y_std = std;
    model.train_y_standardized = centered / std;

    constexpr int kStarts = 3;
    constexpr int kIterations = 50;

    std::vector<Vec> starts;
    starts.push_back(log_from_hyper(prior_hyper ? *prior_hyper : GpHyperparams::defaults(dim)));
    while (static_cast<int>(starts.size()) < kStarts) {
        Vec theta(dim + 2);
        for (int j = 0; j < dim; ++j)
            theta[j] = rng.uniform(std::log(gp_bounds::kLengthscaleMin),
                                   std::log(gp_bounds::kLengthscaleMax));
        theta[dim] = rng.uniform(std::log(gp_bounds::kSignalMin), std::log(gp_bounds::kSignalMax));
        theta[dim + 1] =
            rng.uniform(std::log(gp_bounds::kNoiseMin), std::log(gp_bounds::kNoiseMax));
        starts.push_back(std::move(theta));
    }

    double best_value = -std::numeric_limits<double>::infinity();
    Vec best_theta = clamp_log_params(starts.front(), dim);

    for (Vec theta : starts) {
        theta = clamp_log_params(std::move(theta), dim);
        LmlValueGrad cur = log_marginal_likelihood(x, model.train_y_standardized,
                                                   hyper_from_log(theta, dim));
        double step = 0.1;
        for (int it = 0; it < kIterations; ++it) {
            if (cur.grad.lpNorm<Eigen::Infinity>() < 1e-5) break;
            bool accepted = false;
            for (int bt = 0; bt < 10; ++bt) {
                const Vec trial = clamp_log_params(theta + step * cur.grad, dim);
                const double trial_value =
                    lml_value_only(x, model.train_y_standardized, hyper_from_log(trial, dim));
                if (trial_value > cur.value) {
                    theta = trial;
                    cur = log_marginal_likelihood(x, model.train_y_standardized,
                                                  hyper_from_log(theta, dim));
                    step = std::min(step * 1.3, 1.0);
                    accepted = true;
                    break;
                }
                step *= 0.4;
            }
            if (!accepted) break;
        }
        if (cur.value > best_value) {
            best_value = cur.value;
            best_theta = theta;
        }
    }

    model.hyper = hyper_from_log(best_theta, dim);
    const Mat kf = matern52_cross(x, x, model.hyper);
    Factorization fac = factorize(kf, model.hyper.noise_variance);
    model.jitter = fac.jitter;
    model.chol_factor = fac.llt.matrixL();
    model.alpha = fac.llt.solve(model.train_y_standardized);
    return model;
}

GpPosterior gp_posterior(const GpModel& model, const Mat& query_x) {
    const Mat kxq = matern52_cross(model.train_x, query_x, model.hyper);
    const Mat v = model.chol_factor.triangularView<Eigen::Lower>().solve(kxq);

    Vec mean_std = kxq.transpose() * model.alpha;
    Vec var_std =
        Vec::Constant(query_x.rows(), model.hyper.signal_variance) - v.colwise().squaredNorm().transpose();

    // round-off guard; anything clearly negative means a broken factorization
    const double floor = -1e-9 * std::max(1.0, model.hyper.signal_variance);
    for (int i = 0; i < var_std.size(); ++i) {
        if (var_std[i] < floor)
            throw singular_kernel("posterior variance negative beyond round-off");
        if (var_std[i] < 0.0) var_std[i] = 0.0;
    }

    GpPosterior post;
    post.mean = (mean_std.array() * model.y_std + model.y_mean).matrix();
    post.variance = var_std * (model.y_std * model.y_std);
    return post;
}

std::vector<int> thompson_select(const GpModel& model, const Mat& candidates, int n_batch,
                                 RngStream& rng) {
    const int k = static_cast<int>(candidates.rows());
    if (n_batch < 1 || n_batch > k)
        throw Error(ErrorCode::invalid_argument, "thompson_select: need 1 <= n_batch <= #candidates");

    const Mat kxq = matern52_cross(model.train_x, candidates, model.hyper);
    const Mat v = model.chol_factor.triangularView<Eigen::Lower>().solve(kxq);
    const Vec mean = kxq.transpose() * model.alpha;
    Mat cov = matern52_cross(candidates, candidates, model.hyper);
    cov.noalias() -= v.transpose() * v;

    Mat path_chol;
    for (double jitter = kJitterStart;; jitter *= 10.0) {
        Mat c = cov;
        c.diagonal().array() += jitter;
        Eigen::LLT<Mat> llt(c);
        if (llt.info() == Eigen::Success) {
            path_chol = llt.matrixL();
            break;
        }
        if (jitter > kJitterMax)
            throw singular_kernel("candidate posterior covariance not factorizable");
    }

    std::vector<int> chosen;
    std::vector<char> taken(k, 0);
    std::vector<int> order(k);
    Vec z(k);
    for (int path = 0; path < n_batch; ++path) {
        for (int i = 0; i < k; ++i) z[i] = rng.normal();
        const Vec draw = mean + path_chol * z;
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return draw[a] != draw[b] ? draw[a] < draw[b] : a < b; });
        for (int idx : order) {
            if (!taken[idx]) {
                taken[idx] = 1;
                chosen.push_back(idx);
                break;
            }
        }
    }
    return chosen;
}

}  // namespace divtr
