// Command-line front end; talks to the core exclusively through the shared
// library's C interface.

#include <divtr/divtr.h>

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

namespace {

int fail(divtr_status status) {
    std::fprintf(stderr, "error: %s: %s\n", divtr_status_str(status), divtr_last_error());
    return 1;
}

int cmd_run(const std::string& config, const std::string& out_dir, int workers) {
    const divtr_status st = divtr_experiment_run(config.c_str(), out_dir.c_str(), workers);
    if (st != DIVTR_OK) return fail(st);
    std::printf("results written to %s/results.csv\n", out_dir.c_str());
    return 0;
}

int cmd_compare(const std::string& results, const std::string& format, const std::string& out) {
    const divtr_status st =
        divtr_results_summary(results.c_str(), format.c_str(), out.empty() ? nullptr : out.c_str());
    return st == DIVTR_OK ? 0 : fail(st);
}

int cmd_scatter(const std::string& results, const std::string& function, double tau,
                const std::string& out_dir) {
    const divtr_status st =
        divtr_scatter_emit(results.c_str(), function.c_str(), tau, out_dir.c_str());
    if (st != DIVTR_OK) return fail(st);
    std::printf("scatter data written to %s\n", out_dir.c_str());
    return 0;
}

int cmd_bench_one(const std::string& function, int dim, double tau, const std::string& algo,
                  long long budget, unsigned long long seed, int m, int phases) {
    divtr_objective* objective = nullptr;
    divtr_status st = divtr_objective_create(function.c_str(), dim, nullptr, 0.0, &objective);
    if (st != DIVTR_OK) return fail(st);

    divtr_run_options options;
    divtr_run_options_defaults(&options, dim);
    options.m = m;
    options.tau = tau;
    options.seed = seed;
    if (budget > 0) options.budget = budget;
    if (phases > 0) options.max_phases = phases;

    divtr_result* result = nullptr;
    st = divtr_run(objective, algo.c_str(), &options, &result);
    if (st != DIVTR_OK) {
        divtr_objective_destroy(objective);
        return fail(st);
    }

    const int count = divtr_result_count(result);
    std::vector<double> x(dim);
    std::printf("# %s on %s (D=%d, tau=%g, budget=%lld, seed=%llu)\n", algo.c_str(),
                function.c_str(), dim, tau, options.budget, seed);
    for (int i = 0; i < count; ++i) {
        double value = 0.0;
        divtr_result_elite(result, i, x.data(), &value);
        std::printf("elite %2d: value=%.10g x=(", i, value);
        for (int j = 0; j < dim; ++j) std::printf(j ? ", %.6g" : "%.6g", x[j]);
        std::printf(")\n");
    }
    std::printf("mean=%.10g feasible=%d evals=%lld\n", divtr_result_mean_value(result),
                divtr_result_feasible(result), divtr_result_evals_used(result));

    divtr_result_destroy(result);
    divtr_objective_destroy(objective);
    return 0;
}

int cmd_catalogue() {
    const int n = divtr_catalogue_count();
    for (int i = 0; i < n; ++i)
        std::printf("%-28s %s\n", divtr_catalogue_id(i), divtr_catalogue_formula(i));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diversity-aware trust-region Bayesian optimisation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", divtr_version());

    std::string config, out_dir = "results", results, format = "text", out_path;
    std::string function, algo = "seq";
    int workers = 1, dim = 2, m = 10, phases = 0;
    double tau = 0.1;
    long long budget = 0;
    unsigned long long seed = 1;

    auto* run = app.add_subcommand("run", "execute an experiment from a config file");
    run->add_option("--config", config, "experiment config file")->required();
    run->add_option("--out", out_dir, "output directory (default: results)");
    run->add_option("--workers", workers, "worker threads (default: 1)");

    auto* compare = app.add_subcommand("compare", "print the summary table for a results file");
    compare->add_option("--results", results, "results file")->required();
    compare->add_option("--format", format, "text or csv (default: text)");
    compare->add_option("--out", out_path, "write to file instead of stdout");

    auto* scatter = app.add_subcommand("scatter", "emit 2-D contour and elite point data files");
    scatter->add_option("--results", results, "results file")->required();
    scatter->add_option("--function", function, "objective function id")->required();
    scatter->add_option("--tau", tau, "distance threshold")->required();
    scatter->add_option("--out", out_dir, "output directory (default: results)");

    auto* bench = app.add_subcommand("bench-one", "single run; prints the elites and their mean");
    bench->add_option("--function", function, "objective function id")->required();
    bench->add_option("--dim", dim, "dimension")->required();
    bench->add_option("--tau", tau, "distance threshold")->required();
    bench->add_option("--algo", algo, "seq, int or robot")->required();
    bench->add_option("--budget", budget, "total evaluation budget")->required();
    bench->add_option("--seed", seed, "base rng seed")->required();
    bench->add_option("--m", m, "number of diverse solutions (default: 10)");
    bench->add_option("--phases", phases, "phases for the interleaved driver");

    auto* cat = app.add_subcommand("catalogue", "list the benchmark functions");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config, out_dir, workers);
    if (compare->parsed()) return cmd_compare(results, format, out_path);
    if (scatter->parsed()) return cmd_scatter(results, function, tau, out_dir);
    if (bench->parsed()) return cmd_bench_one(function, dim, tau, algo, budget, seed, m, phases);
    if (cat->parsed()) return cmd_catalogue();
    return 0;
}
