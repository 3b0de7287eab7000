#include "divtr/divtr.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include "harness.hpp"
#include "meta.hpp"
#include "robot.hpp"

namespace {

thread_local std::string tl_error;

divtr_status to_status(divtr::ErrorCode code) {
    using divtr::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return DIVTR_ERR_INVALID_ARGUMENT;
        case ErrorCode::unknown_function: return DIVTR_ERR_UNKNOWN_FUNCTION;
        case ErrorCode::out_of_domain: return DIVTR_ERR_OUT_OF_DOMAIN;
        case ErrorCode::budget_exhausted: return DIVTR_ERR_BUDGET_EXHAUSTED;
        case ErrorCode::insufficient_budget: return DIVTR_ERR_INSUFFICIENT_BUDGET;
        case ErrorCode::singular_kernel: return DIVTR_ERR_SINGULAR_KERNEL;
        case ErrorCode::dimension_mismatch: return DIVTR_ERR_DIMENSION_MISMATCH;
        case ErrorCode::empty_input: return DIVTR_ERR_EMPTY_INPUT;
        case ErrorCode::unsupported_dim: return DIVTR_ERR_UNSUPPORTED_DIM;
        case ErrorCode::io_error: return DIVTR_ERR_IO;
        case ErrorCode::parse_error: return DIVTR_ERR_PARSE;
    }
    return DIVTR_ERR_INTERNAL;
}

template <typename Fn>
divtr_status guarded(Fn&& fn) {
    try {
        fn();
        return DIVTR_OK;
    } catch (const divtr::Error& e) {
        tl_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        tl_error = e.what();
        return DIVTR_ERR_INTERNAL;
    } catch (...) {
        tl_error = "unknown error";
        return DIVTR_ERR_INTERNAL;
    }
}

divtr_status fail_arg(const char* message) {
    tl_error = message;
    return DIVTR_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct divtr_objective {
    divtr::ObjectiveFunction fn;
};

struct divtr_result {
    divtr::EliteSet elites;
    long long evals_used = 0;
};

extern "C" {

const char* divtr_status_str(divtr_status status) {
    switch (status) {
        case DIVTR_OK: return "ok";
        case DIVTR_ERR_INVALID_ARGUMENT: return "invalid argument";
        case DIVTR_ERR_UNKNOWN_FUNCTION: return "unknown function";
        case DIVTR_ERR_OUT_OF_DOMAIN: return "out of domain";
        case DIVTR_ERR_BUDGET_EXHAUSTED: return "budget exhausted";
        case DIVTR_ERR_INSUFFICIENT_BUDGET: return "insufficient budget";
        case DIVTR_ERR_SINGULAR_KERNEL: return "singular kernel";
        case DIVTR_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case DIVTR_ERR_EMPTY_INPUT: return "empty input";
        case DIVTR_ERR_UNSUPPORTED_DIM: return "unsupported dimension";
        case DIVTR_ERR_IO: return "i/o error";
        case DIVTR_ERR_PARSE: return "parse error";
        case DIVTR_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* divtr_last_error(void) { return tl_error.c_str(); }

const char* divtr_version(void) { return "0.1.0"; }

int divtr_catalogue_count(void) {
    return static_cast<int>(divtr::catalogue_entries().size());
}

const char* divtr_catalogue_id(int index) {
    const auto& entries = divtr::catalogue_entries();
    if (index < 0 || index >= static_cast<int>(entries.size())) return nullptr;
    return entries[index].id.c_str();
}

const char* divtr_catalogue_formula(int index) {
    const auto& entries = divtr::catalogue_entries();
    if (index < 0 || index >= static_cast<int>(entries.size())) return nullptr;
    return entries[index].formula.c_str();
}

divtr_status divtr_objective_create(const char* function_id, int dim, const double* shift,
                                    double f_offset, divtr_objective** out) {
    if (!function_id || !out) return fail_arg("null pointer argument");
    return guarded([&] {
        divtr::Vec s;
        if (shift) s = Eigen::Map<const divtr::Vec>(shift, dim);
        auto* handle = new divtr_objective{divtr::make_objective(function_id, dim, s, f_offset)};
        *out = handle;
    });
}

divtr_status divtr_objective_create_custom(int dim, const double* lower, const double* upper,
                                           divtr_eval_fn fn, void* user, divtr_objective** out) {
    if (!lower || !upper || !fn || !out) return fail_arg("null pointer argument");
    return guarded([&] {
        divtr::Domain domain;
        domain.dim = dim;
        domain.lower = Eigen::Map<const divtr::Vec>(lower, dim);
        domain.upper = Eigen::Map<const divtr::Vec>(upper, dim);
        for (int i = 0; i < dim; ++i)
            if (!(domain.lower[i] < domain.upper[i]))
                throw divtr::Error(divtr::ErrorCode::invalid_argument,
                                   "custom objective: lower must be below upper");
        divtr::ObjectiveFunction f;
        f.id = "custom";
        f.domain = domain;
        f.shift = divtr::Vec::Zero(dim);
        f.raw = [fn, user, dim](const divtr::Vec& x) { return fn(x.data(), dim, user); };
        *out = new divtr_objective{std::move(f)};
    });
}

void divtr_objective_destroy(divtr_objective* objective) { delete objective; }

int divtr_objective_dim(const divtr_objective* objective) {
    return objective ? objective->fn.domain.dim : 0;
}

divtr_status divtr_objective_eval(const divtr_objective* objective, const double* x,
                                  double* value_out) {
    if (!objective || !x || !value_out) return fail_arg("null pointer argument");
    return guarded([&] {
        const divtr::Vec v = Eigen::Map<const divtr::Vec>(x, objective->fn.domain.dim);
        if (!objective->fn.domain.contains(v))
            throw divtr::out_of_domain("query outside the box domain");
        *value_out = objective->fn(v);
    });
}

divtr_status divtr_objective_optimum(const divtr_objective* objective, double* x_out,
                                     double* value_out) {
    if (!objective) return fail_arg("null pointer argument");
    return guarded([&] {
        if (!objective->fn.known_optimum_value ||
            objective->fn.optimum_location.size() != objective->fn.domain.dim)
            throw divtr::Error(divtr::ErrorCode::invalid_argument, "optimum unknown");
        if (x_out)
            std::memcpy(x_out, objective->fn.optimum_location.data(),
                        sizeof(double) * objective->fn.domain.dim);
        if (value_out) *value_out = *objective->fn.known_optimum_value;
    });
}

void divtr_run_options_defaults(divtr_run_options* options, int dim) {
    if (!options) return;
    options->m = 10;
    options->budget = (100LL + 10LL * dim) * 10;
    options->tau = 0.1;
    options->max_phases = 5;
    options->seed = 1;
    options->batch_size = 0;
    options->init_points = 0;
    options->guarded_replacement = 0;
}

divtr_status divtr_run(const divtr_objective* objective, const char* algorithm,
                       const divtr_run_options* options, divtr_result** out) {
    if (!objective || !algorithm || !options || !out) return fail_arg("null pointer argument");
    return guarded([&] {
        const std::string alg = algorithm;
        auto* result = new divtr_result{};
        try {
            if (alg == "robot") {
                divtr::RobotConfig rc;
                rc.m = options->m;
                rc.total_budget = options->budget;
                rc.tau = options->tau;
                rc.base_seed = options->seed;
                rc.n0 = options->init_points;
                rc.n_batch = options->batch_size > 0 ? options->batch_size : 4;
                auto res = divtr::run_robot(objective->fn, rc);
                result->elites = std::move(res.elites);
                result->evals_used = res.total_evals;
            } else if (alg == "seq" || alg == "int") {
                divtr::MetaConfig mc;
                mc.m = options->m;
                mc.total_budget = options->budget;
                mc.tau = options->tau;
                mc.max_phases = options->max_phases;
                mc.base_seed = options->seed;
                mc.n0 = options->init_points;
                mc.n_batch = options->batch_size > 0 ? options->batch_size : 4;
                mc.guarded_replacement = options->guarded_replacement != 0;
                auto res = alg == "seq" ? divtr::run_sequential(objective->fn, mc)
                                        : divtr::run_interleaved(objective->fn, mc);
                result->elites = std::move(res.elites);
                result->evals_used = res.total_evals;
            } else {
                throw divtr::Error(divtr::ErrorCode::invalid_argument,
                                   "algorithm must be seq, int or robot");
            }
        } catch (...) {
            delete result;
            throw;
        }
        *out = result;
    });
}

void divtr_result_destroy(divtr_result* result) { delete result; }

int divtr_result_count(const divtr_result* result) {
    return result ? result->elites.size() : 0;
}

divtr_status divtr_result_elite(const divtr_result* result, int index, double* x_out,
                                double* value_out) {
    if (!result) return fail_arg("null pointer argument");
    if (index < 0 || index >= result->elites.size()) return fail_arg("elite index out of range");
    const auto& elite = result->elites.elites[index];
    if (x_out) std::memcpy(x_out, elite.x.data(), sizeof(double) * elite.x.size());
    if (value_out) *value_out = elite.value;
    return DIVTR_OK;
}

int divtr_result_feasible(const divtr_result* result) {
    return result && result->elites.pairwise_feasible() ? 1 : 0;
}

long long divtr_result_evals_used(const divtr_result* result) {
    return result ? result->evals_used : 0;
}

double divtr_result_mean_value(const divtr_result* result) {
    if (!result || result->elites.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& e : result->elites.elites) sum += e.value;
    return sum / result->elites.size();
}

divtr_status divtr_kruskal_wallis(const double* const* groups, const int* sizes, int n_groups,
                                  double* h_out, double* p_out) {
    if (!groups || !sizes || !h_out || !p_out) return fail_arg("null pointer argument");
    return guarded([&] {
        std::vector<std::vector<double>> g(n_groups);
        for (int i = 0; i < n_groups; ++i) g[i].assign(groups[i], groups[i] + sizes[i]);
        const auto res = divtr::stats::kruskal_wallis(g);
        *h_out = res.h;
        *p_out = res.p;
    });
}

divtr_status divtr_pairwise_compare(const double* const* groups, const int* sizes, int n_groups,
                                    double alpha, double* p_adjusted_out, int* direction_out) {
    if (!groups || !sizes || !p_adjusted_out || !direction_out)
        return fail_arg("null pointer argument");
    return guarded([&] {
        std::vector<std::vector<double>> g(n_groups);
        for (int i = 0; i < n_groups; ++i) g[i].assign(groups[i], groups[i] + sizes[i]);
        const auto res = divtr::stats::pairwise_compare(g, alpha);
        for (int i = 0; i < n_groups; ++i) {
            for (int j = 0; j < n_groups; ++j) {
                p_adjusted_out[i * n_groups + j] = i == j ? 1.0 : res.pairwise[i][j].p_adjusted;
                direction_out[i * n_groups + j] = i == j ? 0 : res.pairwise[i][j].direction;
            }
        }
    });
}

divtr_status divtr_experiment_run(const char* config_path, const char* out_dir, int workers) {
    if (!config_path || !out_dir) return fail_arg("null pointer argument");
    return guarded([&] {
        const auto config = divtr::ExperimentConfig::parse_file(config_path);
        divtr::run_experiment(config, out_dir, workers, &std::cerr);
    });
}

divtr_status divtr_results_summary(const char* results_path, const char* format,
                                   const char* out_path) {
    if (!results_path) return fail_arg("null pointer argument");
    return guarded([&] {
        const std::string fmt = format ? format : "text";
        if (fmt != "text" && fmt != "csv")
            throw divtr::Error(divtr::ErrorCode::invalid_argument, "format must be text or csv");
        const auto records = divtr::read_results(results_path);
        const auto table = divtr::summarize(records);
        const std::string& body = fmt == "csv" ? table.csv : table.text;
        if (out_path) {
            std::ofstream out(out_path);
            if (!out) throw divtr::Error(divtr::ErrorCode::io_error, "cannot open output file");
            out << body;
        } else {
            std::cout << body;
        }
    });
}

divtr_status divtr_scatter_emit(const char* results_path, const char* function_id, double tau,
                                const char* out_dir) {
    if (!results_path || !function_id || !out_dir) return fail_arg("null pointer argument");
    return guarded([&] {
        const auto records = divtr::read_results(results_path);
        divtr::emit_scatter(records, function_id, tau, out_dir);
    });
}

}  // extern "C"
