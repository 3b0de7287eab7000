/*
 * divtr - diversity-aware trust-region Bayesian optimisation.
 *
 * C interface to the optimisation core: benchmark objectives, the
 * sequential / interleaved diverse-solution drivers, the rank-ordered
 * multi-region baseline, nonparametric comparison tests, and the
 * file-based experiment harness.
 *
 * All functions returning divtr_status report DIVTR_OK on success; on any
 * other status the out-parameters are untouched and divtr_last_error()
 * carries a thread-local message.
 */
#ifndef DIVTR_H
#define DIVTR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DIVTR_API __declspec(dllexport)
#else
#define DIVTR_API __attribute__((visibility("default")))
#endif

typedef enum divtr_status {
    DIVTR_OK = 0,
    DIVTR_ERR_INVALID_ARGUMENT = 1,
    DIVTR_ERR_UNKNOWN_FUNCTION = 2,
    DIVTR_ERR_OUT_OF_DOMAIN = 3,
    DIVTR_ERR_BUDGET_EXHAUSTED = 4,
    DIVTR_ERR_INSUFFICIENT_BUDGET = 5,
    DIVTR_ERR_SINGULAR_KERNEL = 6,
    DIVTR_ERR_DIMENSION_MISMATCH = 7,
    DIVTR_ERR_EMPTY_INPUT = 8,
    DIVTR_ERR_UNSUPPORTED_DIM = 9,
    DIVTR_ERR_IO = 10,
    DIVTR_ERR_PARSE = 11,
    DIVTR_ERR_INTERNAL = 12
} divtr_status;

DIVTR_API const char* divtr_status_str(divtr_status status);
DIVTR_API const char* divtr_last_error(void);
DIVTR_API const char* divtr_version(void);

/* ---- benchmark catalogue -------------------------------------------- */

DIVTR_API int divtr_catalogue_count(void);
/* NULL when index is out of range */
DIVTR_API const char* divtr_catalogue_id(int index);
DIVTR_API const char* divtr_catalogue_formula(int index);

/* ---- objectives ------------------------------------------------------ */

typedef struct divtr_objective divtr_objective;

/*
 * Catalogue objective on [-5,5]^dim evaluated as f(x) = g(x - shift) +
 * f_offset. shift may be NULL (all zeros); it must keep the optimum inside
 * the box.
 */
DIVTR_API divtr_status divtr_objective_create(const char* function_id, int dim,
                                              const double* shift, double f_offset,
                                              divtr_objective** out);

/* user-supplied black box on an arbitrary box domain */
typedef double (*divtr_eval_fn)(const double* x, int dim, void* user);
DIVTR_API divtr_status divtr_objective_create_custom(int dim, const double* lower,
                                                     const double* upper, divtr_eval_fn fn,
                                                     void* user, divtr_objective** out);

DIVTR_API void divtr_objective_destroy(divtr_objective* objective);
DIVTR_API int divtr_objective_dim(const divtr_objective* objective);
/* unbudgeted probe evaluation (not part of any run's accounting) */
DIVTR_API divtr_status divtr_objective_eval(const divtr_objective* objective, const double* x,
                                            double* value_out);
/* known optimum location and value; DIVTR_ERR_INVALID_ARGUMENT if unknown */
DIVTR_API divtr_status divtr_objective_optimum(const divtr_objective* objective, double* x_out,
                                               double* value_out);

/* ---- diverse-solution runs ------------------------------------------- */

typedef struct divtr_run_options {
    int m;                    /* number of diverse solutions, default 10 */
    long long budget;         /* total evaluation budget, default (100 + 10 dim) * m */
    double tau;               /* minimum pairwise distance, default 0.1 */
    int max_phases;           /* interleaved driver only, default 5 */
    unsigned long long seed;  /* base seed, default 1 */
    int batch_size;           /* 0 -> 4 */
    int init_points;          /* 0 -> 2 * dim */
    int guarded_replacement;  /* interleaved driver: replace a slot only on improvement */
} divtr_run_options;

/* fill every field with its default for the given dimension */
DIVTR_API void divtr_run_options_defaults(divtr_run_options* options, int dim);

typedef struct divtr_result divtr_result;

/* algorithm is "seq", "int" or "robot" */
DIVTR_API divtr_status divtr_run(const divtr_objective* objective, const char* algorithm,
                                 const divtr_run_options* options, divtr_result** out);

DIVTR_API void divtr_result_destroy(divtr_result* result);
DIVTR_API int divtr_result_count(const divtr_result* result);
/* x_out must hold dim doubles; either out pointer may be NULL */
DIVTR_API divtr_status divtr_result_elite(const divtr_result* result, int index, double* x_out,
                                          double* value_out);
/* 1 when all pairwise distances of the returned set are >= tau */
DIVTR_API int divtr_result_feasible(const divtr_result* result);
DIVTR_API long long divtr_result_evals_used(const divtr_result* result);
DIVTR_API double divtr_result_mean_value(const divtr_result* result);

/* ---- nonparametric comparison ---------------------------------------- */

DIVTR_API divtr_status divtr_kruskal_wallis(const double* const* groups, const int* sizes,
                                            int n_groups, double* h_out, double* p_out);

/*
 * Pairwise two-sided Mann-Whitney tests with Bonferroni adjustment.
 * p_adjusted_out and direction_out are n_groups * n_groups row-major;
 * direction is +1 when the row group outperforms (has smaller values than)
 * the column group at level alpha, -1 for the reverse, 0 otherwise.
 */
DIVTR_API divtr_status divtr_pairwise_compare(const double* const* groups, const int* sizes,
                                              int n_groups, double alpha,
                                              double* p_adjusted_out, int* direction_out);

/* ---- experiment harness ---------------------------------------------- */

/* run a config-file experiment; records append to <out_dir>/results.csv */
DIVTR_API divtr_status divtr_experiment_run(const char* config_path, const char* out_dir,
                                            int workers);

/* render the summary table; format "text" or "csv"; out_path NULL -> stdout */
DIVTR_API divtr_status divtr_results_summary(const char* results_path, const char* format,
                                             const char* out_path);

/* emit 2-D contour grid and elite/optimum point files for matching cells */
DIVTR_API divtr_status divtr_scatter_emit(const char* results_path, const char* function_id,
                                          double tau, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIVTR_H */
