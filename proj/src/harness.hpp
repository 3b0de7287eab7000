#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "diversity.hpp"
#include "stats.hpp"

namespace divtr {

// Full experiment grid. Every (algorithm, function, dim, tau, repeat) cell
// gets a deterministic seed derived from base_seed and the cell key.
struct ExperimentConfig {
    std::vector<std::string> functions;
    std::vector<int> dims;
    std::vector<double> taus;
    int m = 10;
    int repeats = 30;
    std::string budget_rule = "paper";  // "paper", "paper-x10", or an explicit integer
    std::vector<std::string> algorithms = {"seq", "int", "robot"};
    int max_phases = 5;
    std::uint64_t base_seed = 1;

    // optimizer overrides
    int n0 = 0;
    int n_batch = 4;
    bool guarded_replacement = false;

    long long budget_for(int dim) const;
    void validate() const;

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_file(const std::string& path);
};

struct CellKey {
    std::string algorithm;
    std::string function;
    int dim = 0;
    double tau = 0.0;
    int repeat = 0;

    std::string str() const;  // "algorithm/function/D/tau/repeat"
};

struct RunRecord {
    CellKey key;
    std::vector<Elite> elites;
    double mean_value = 0.0;
    bool feasible = false;
    long long evals_used = 0;
    double wall_time = 0.0;   // not persisted
    std::string error;        // nonempty marks a failed cell
};

std::uint64_t cell_seed(std::uint64_t base_seed, const CellKey& key);

// Execute every cell of the grid with `workers` threads. Records append to
// <out_dir>/results.csv in grid order; cells already present in the file are
// skipped, so an interrupted experiment resumes where it stopped. Per-cell
// failures are recorded with an error tag and do not stop the experiment.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                      int workers, std::ostream* progress = nullptr);

// Run one cell in isolation (used by run_experiment and the bench CLI).
RunRecord run_cell(const ExperimentConfig& config, const CellKey& key);

std::string format_record(const RunRecord& record);
RunRecord parse_record(const std::string& line);
std::vector<RunRecord> read_results(const std::string& path);
extern const char* const kResultsHeader;

struct SummaryTable {
    std::string csv;
    std::string text;
};

// Per-(tau, function, dim) means and standard deviations across repeats with
// the cross-algorithm statistical comparison columns.
SummaryTable summarize(const std::vector<RunRecord>& records, double alpha = 0.05);

// 2-D contour grid (201 x 201 over the box) and elite/optimum point files for
// every record matching the function and tau.
void emit_scatter(const std::vector<RunRecord>& records, const std::string& function, double tau,
                  const std::string& out_dir);

}  // namespace divtr
