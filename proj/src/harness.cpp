#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "meta.hpp"
#include "robot.hpp"

namespace divtr {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kResultsHeader =
    "cell_key,mean_value,stdev_within_run,feasible,evals_used,elite_points_json_like_blob";

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_tau(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tau);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long long parse_int(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const long long n = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "config: bad integer for '" + key + "': " + v);
    }
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "config: bad real for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw Error(ErrorCode::parse_error, "config: bad boolean for '" + key + "': " + v);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<CellKey> grid_cells(const ExperimentConfig& config) {
    std::vector<CellKey> cells;
    for (const auto& alg : config.algorithms)
        for (const auto& fn : config.functions)
            for (int dim : config.dims)
                for (double tau : config.taus)
                    for (int rep = 0; rep < config.repeats; ++rep)
                        cells.push_back({alg, fn, dim, tau, rep});
    return cells;
}

}  // namespace

long long ExperimentConfig::budget_for(int dim) const {
    if (budget_rule == "paper") return (100LL + 10LL * dim) * m;
    if (budget_rule == "paper-x10") return (1000LL + 100LL * dim) * m;
    return parse_int(budget_rule, "budget");
}

void ExperimentConfig::validate() const {
    if (functions.empty()) throw Error(ErrorCode::invalid_argument, "config: no functions");
    if (dims.empty()) throw Error(ErrorCode::invalid_argument, "config: no dims");
    if (taus.empty()) throw Error(ErrorCode::invalid_argument, "config: no taus");
    if (m < 1 || repeats < 1 || max_phases < 1)
        throw Error(ErrorCode::invalid_argument, "config: m, repeats, max_phases must be positive");
    const auto ids = catalogue();
    for (const auto& fn : functions)
        if (std::find(ids.begin(), ids.end(), fn) == ids.end())
            throw Error(ErrorCode::unknown_function, "config: unknown function " + fn);
    for (const auto& alg : algorithms)
        if (alg != "seq" && alg != "int" && alg != "robot")
            throw Error(ErrorCode::invalid_argument, "config: unknown algorithm " + alg);
    for (int dim : dims) budget_for(dim);  // explicit budgets must parse

    std::map<std::uint64_t, std::string> seen;
    for (const auto& cell : grid_cells(*this)) {
        const std::uint64_t seed = cell_seed(base_seed, cell);
        auto [it, inserted] = seen.emplace(seed, cell.str());
        if (!inserted)
            throw Error(ErrorCode::invalid_argument,
                        "config: derived seed collision between " + it->second + " and " + cell.str());
    }
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig cfg;
    cfg.algorithms.clear();
    std::string line, section = "experiment";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "optimizer")
                throw Error(ErrorCode::parse_error, "config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::parse_error,
                        "config: expected key = value on line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "experiment") {
            if (key == "functions") cfg.functions = split_list(value);
            else if (key == "dims") {
                cfg.dims.clear();
                for (const auto& v : split_list(value)) cfg.dims.push_back((int)parse_int(v, key));
            } else if (key == "taus") {
                cfg.taus.clear();
                for (const auto& v : split_list(value)) cfg.taus.push_back(parse_real(v, key));
            } else if (key == "m") cfg.m = (int)parse_int(value, key);
            else if (key == "repeats") cfg.repeats = (int)parse_int(value, key);
            else if (key == "budget") cfg.budget_rule = value;
            else if (key == "algorithms") cfg.algorithms = split_list(value);
            else if (key == "max_phases") cfg.max_phases = (int)parse_int(value, key);
            else if (key == "base_seed") cfg.base_seed = (std::uint64_t)parse_int(value, key);
            else throw Error(ErrorCode::parse_error, "config: unknown key '" + key + "'");
        } else {
            if (key == "n0") cfg.n0 = (int)parse_int(value, key);
            else if (key == "n_batch") cfg.n_batch = (int)parse_int(value, key);
            else if (key == "guarded_replacement") cfg.guarded_replacement = parse_bool(value, key);
            else throw Error(ErrorCode::parse_error, "config: unknown key '" + key + "'");
        }
    }
    if (cfg.algorithms.empty()) cfg.algorithms = {"seq", "int", "robot"};
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open config file " + path);
    return parse(in);
}

std::string CellKey::str() const {
    return algorithm + "/" + function + "/" + std::to_string(dim) + "/" + fmt_tau(tau) + "/" +
           std::to_string(repeat);
}

std::uint64_t cell_seed(std::uint64_t base_seed, const CellKey& key) {
    return derive_seed(base_seed, fnv1a(key.str()));
}

RunRecord run_cell(const ExperimentConfig& config, const CellKey& key) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord record;
    record.key = key;

    const ObjectiveFunction objective = make_objective(key.function, key.dim);
    const long long budget = config.budget_for(key.dim);
    const std::uint64_t seed = cell_seed(config.base_seed, key);

    EliteSet elites;
    std::vector<RunLog> logs;
    long long evals = 0;
    if (key.algorithm == "robot") {
        RobotConfig rc;
        rc.m = config.m;
        rc.total_budget = budget;
        rc.tau = key.tau;
        rc.base_seed = seed;
        rc.n0 = config.n0;
        rc.n_batch = config.n_batch;
        RobotResult res = run_robot(objective, rc);
        elites = std::move(res.elites);
        evals = res.total_evals;
    } else {
        MetaConfig mc;
        mc.m = config.m;
        mc.total_budget = budget;
        mc.tau = key.tau;
        mc.max_phases = config.max_phases;
        mc.base_seed = seed;
        mc.n0 = config.n0;
        mc.n_batch = config.n_batch;
        mc.guarded_replacement = config.guarded_replacement;
        MetaResult res =
            key.algorithm == "seq" ? run_sequential(objective, mc) : run_interleaved(objective, mc);
        elites = std::move(res.elites);
        evals = res.total_evals;
    }

    record.elites = elites.elites;
    record.feasible = elites.pairwise_feasible();
    record.evals_used = evals;
    double sum = 0.0;
    for (const auto& e : record.elites) sum += e.value;
    record.mean_value = record.elites.empty() ? 0.0 : sum / record.elites.size();
    record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

std::string format_record(const RunRecord& record) {
    std::string line = record.key.str() + ',';
    if (!record.error.empty()) {
        line += "nan,0,0," + std::to_string(record.evals_used) + ",error:" + record.error;
        return line;
    }
    line += fmt17(record.mean_value);
    line += ",0,";  // stdev_within_run placeholder column
    line += record.feasible ? '1' : '0';
    line += ',' + std::to_string(record.evals_used) + ',';
    json blob = json::array();
    for (const auto& e : record.elites) {
        json pt = json::array();
        for (int i = 0; i < e.x.size(); ++i) pt.push_back(e.x[i]);
        pt.push_back(e.value);
        blob.push_back(std::move(pt));
    }
    line += blob.dump();
    return line;
}

RunRecord parse_record(const std::string& line) {
    std::vector<std::string> head;
    size_t pos = 0;
    for (int i = 0; i < 5; ++i) {
        const size_t comma = line.find(',', pos);
        if (comma == std::string::npos)
            throw Error(ErrorCode::parse_error, "results: malformed record line");
        head.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    const std::string blob = line.substr(pos);

    RunRecord record;
    {
        std::vector<std::string> kp;
        std::stringstream ss(head[0]);
        std::string item;
        while (std::getline(ss, item, '/')) kp.push_back(item);
        if (kp.size() != 5) throw Error(ErrorCode::parse_error, "results: malformed cell key");
        record.key = {kp[0], kp[1], (int)parse_int(kp[2], "dim"), parse_real(kp[3], "tau"),
                      (int)parse_int(kp[4], "repeat")};
    }
    record.evals_used = parse_int(head[4], "evals_used");
    if (blob.rfind("error:", 0) == 0) {
        record.error = blob.substr(6);
        record.mean_value = std::nan("");
        return record;
    }
    record.mean_value = parse_real(head[1], "mean_value");
    record.feasible = head[3] == "1";
    const json arr = json::parse(blob);
    for (const auto& pt : arr) {
        Elite e;
        e.x.resize(pt.size() - 1);
        for (size_t i = 0; i + 1 < pt.size(); ++i) e.x[i] = pt[i].get<double>();
        e.value = pt.back().get<double>();
        record.elites.push_back(std::move(e));
    }
    return record;
}

std::vector<RunRecord> read_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open results file " + path);
    std::vector<RunRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line == kResultsHeader) {
            first = false;
            continue;
        }
        first = false;
        records.push_back(parse_record(line));
    }
    return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                      int workers, std::ostream* progress) {
    config.validate();
    fs::create_directories(out_dir);
    const std::string results_path = (fs::path(out_dir) / "results.csv").string();

    std::vector<RunRecord> done;
    std::set<std::string> done_keys;
    if (fs::exists(results_path)) {
        done = read_results(results_path);
        for (const auto& r : done) done_keys.insert(r.key.str());
    }

    std::vector<CellKey> pending;
    for (const auto& cell : grid_cells(config))
        if (!done_keys.count(cell.str())) pending.push_back(cell);

    std::ofstream out(results_path, std::ios::app);
    if (!out) throw Error(ErrorCode::io_error, "cannot open results file " + results_path);
    if (done.empty() && done_keys.empty()) out << kResultsHeader << '\n' << std::flush;

    std::atomic<size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<size_t, RunRecord> finished;

    const int n_workers = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= pending.size()) return;
                RunRecord record;
                try {
                    record = run_cell(config, pending[i]);
                } catch (const std::exception& e) {
                    record.key = pending[i];
                    record.error = e.what();
                }
                std::lock_guard lock(mu);
                finished.emplace(i, std::move(record));
                cv.notify_all();
            }
        });
    }

    // single serialized appender, in grid order
    std::vector<RunRecord> fresh;
    for (size_t cursor = 0; cursor < pending.size(); ++cursor) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return finished.count(cursor) > 0; });
        RunRecord record = std::move(finished.at(cursor));
        finished.erase(cursor);
        lock.unlock();

        out << format_record(record) << '\n' << std::flush;
        if (progress)
            *progress << "[" << (cursor + 1) << "/" << pending.size() << "] " << record.key.str()
                      << (record.error.empty()
                              ? " mean=" + std::to_string(record.mean_value)
                              : " error=" + record.error)
                      << " (" << record.wall_time << "s)\n";
        fresh.push_back(std::move(record));
    }
    for (auto& t : pool) t.join();

    done.insert(done.end(), fresh.begin(), fresh.end());
    return done;
}

namespace {

struct RowKey {
    double tau;
    std::string function;
    int dim;
    bool operator<(const RowKey& o) const {
        if (tau != o.tau) return tau < o.tau;
        if (function != o.function) return function < o.function;
        return dim < o.dim;
    }
};

std::vector<std::string> present_algorithms(const std::vector<RunRecord>& records) {
    std::vector<std::string> canonical = {"seq", "int", "robot"};
    std::set<std::string> present;
    for (const auto& r : records) present.insert(r.key.algorithm);
    std::vector<std::string> out;
    for (const auto& a : canonical)
        if (present.count(a)) out.push_back(a);
    for (const auto& a : present)
        if (std::find(canonical.begin(), canonical.end(), a) == canonical.end()) out.push_back(a);
    return out;
}

std::string fmt_stat(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

SummaryTable summarize(const std::vector<RunRecord>& records, double alpha) {
    const std::vector<std::string> algs = present_algorithms(records);
    std::map<RowKey, std::map<std::string, std::vector<double>>> grouped;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        grouped[{r.key.tau, r.key.function, r.key.dim}][r.key.algorithm].push_back(r.mean_value);
    }

    std::ostringstream csv, text;
    csv << "tau,function,D";
    for (const auto& a : algs) csv << ',' << a << "_mean," << a << "_stdev," << a << "_stat";
    csv << '\n';

    double current_tau = std::nan("");
    char buf[256];
    for (const auto& [row, per_alg] : grouped) {
        if (row.tau != current_tau) {
            current_tau = row.tau;
            text << "== tau " << fmt_tau(row.tau) << " ==\n";
            std::snprintf(buf, sizeof(buf), "%-28s %3s", "function", "D");
            text << buf;
            for (size_t a = 0; a < algs.size(); ++a) {
                std::snprintf(buf, sizeof(buf), " | %12s (%zu) %10s %10s", algs[a].c_str(), a + 1,
                              "st.dev", "stat");
                text << buf;
            }
            text << '\n';
        }

        // statistical comparison needs every present algorithm sampled at least twice
        stats::ComparisonResult cmp;
        bool have_stats = algs.size() >= 2;
        std::vector<std::vector<double>> groups;
        for (const auto& a : algs) {
            auto it = per_alg.find(a);
            if (it == per_alg.end() || it->second.size() < 2) have_stats = false;
            groups.push_back(it == per_alg.end() ? std::vector<double>{} : it->second);
        }
        if (have_stats) cmp = stats::pairwise_compare(groups, alpha);

        csv << fmt_tau(row.tau) << ',' << row.function << ',' << row.dim;
        std::snprintf(buf, sizeof(buf), "%-28s %3d", row.function.c_str(), row.dim);
        text << buf;
        for (size_t a = 0; a < algs.size(); ++a) {
            const auto it = per_alg.find(algs[a]);
            if (it == per_alg.end() || it->second.empty()) {
                csv << ",,,";
                std::snprintf(buf, sizeof(buf), " | %17s %10s %10s", "-", "-", "");
                text << buf;
                continue;
            }
            const auto& vals = it->second;
            double mean = 0.0;
            for (double v : vals) mean += v;
            mean /= vals.size();
            double sd = 0.0;
            if (vals.size() > 1) {
                for (double v : vals) sd += (v - mean) * (v - mean);
                sd = std::sqrt(sd / (vals.size() - 1));
            }
            const std::string stat = have_stats ? cmp.symbols_for(static_cast<int>(a)) : "";
            csv << ',' << fmt_stat(mean) << ',' << fmt_stat(sd) << ',' << stat;
            std::snprintf(buf, sizeof(buf), " | %17.6g %10.4g %10s", mean, sd, stat.c_str());
            text << buf;
        }
        csv << '\n';
        text << '\n';
    }
    return {csv.str(), text.str()};
}

void emit_scatter(const std::vector<RunRecord>& records, const std::string& function, double tau,
                  const std::string& out_dir) {
    std::vector<const RunRecord*> matching;
    bool saw_other_dim = false;
    for (const auto& r : records) {
        if (r.key.function != function || r.key.tau != tau || !r.error.empty()) continue;
        if (r.key.dim != 2) {
            saw_other_dim = true;
            continue;
        }
        matching.push_back(&r);
    }
    if (matching.empty()) {
        if (saw_other_dim)
            throw Error(ErrorCode::unsupported_dim, "scatter data requires 2-D cells");
        throw Error(ErrorCode::invalid_argument,
                    "no records for function " + function + " at tau " + fmt_tau(tau));
    }

    fs::create_directories(out_dir);
    const ObjectiveFunction objective = make_objective(function, 2);

    {
        std::ofstream grid((fs::path(out_dir) / (function + "_grid.csv")).string());
        if (!grid) throw Error(ErrorCode::io_error, "cannot write grid file");
        constexpr int kSteps = 201;
        Vec x(2);
        for (int i = 0; i < kSteps; ++i) {
            x[0] = -5.0 + 10.0 * i / (kSteps - 1);
            for (int j = 0; j < kSteps; ++j) {
                x[1] = -5.0 + 10.0 * j / (kSteps - 1);
                grid << fmt17(x[0]) << ',' << fmt17(x[1]) << ',' << fmt17(objective(x)) << '\n';
            }
        }
    }

    for (const RunRecord* r : matching) {
        std::string name = r->key.str();
        std::replace(name.begin(), name.end(), '/', '_');
        std::ofstream pts((fs::path(out_dir) / (name + "_points.csv")).string());
        if (!pts) throw Error(ErrorCode::io_error, "cannot write points file");
        for (const auto& e : r->elites)
            pts << "elite," << fmt17(e.x[0]) << ',' << fmt17(e.x[1]) << ',' << fmt17(e.value) << '\n';
        pts << "optimum," << fmt17(objective.optimum_location[0]) << ','
            << fmt17(objective.optimum_location[1]) << ','
            << fmt17(objective.known_optimum_value.value_or(objective(objective.optimum_location)))
            << '\n';
    }
}

}  // namespace divtr
