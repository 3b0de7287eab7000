#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace divtr {

using Vec = Eigen::VectorXd;

// Box search domain. Default benchmark box is [-5,5]^D.
struct Domain {
    int dim = 0;
    Vec lower;
    Vec upper;

    static Domain box(int dim, double lo = -5.0, double hi = 5.0);

    bool contains(const Vec& x) const;
    Vec to_unit(const Vec& x) const;    // physical -> [0,1]^D
    Vec from_unit(const Vec& u) const;  // [0,1]^D -> physical
    double diameter() const { return (upper - lower).norm(); }
};

// Deterministic scalar black-box on a box domain. The raw formula g is
// evaluated as f(x) = g(x - shift) + f_offset, with g's optimum at known
// z-coordinates so that shifting relocates the optimum.
struct ObjectiveFunction {
    std::string id;
    Domain domain;
    Vec shift;
    double f_offset = 0.0;
    std::optional<double> known_optimum_value;
    Vec optimum_location;  // where known_optimum_value is attained (boundary for slope-type)
    std::function<double(const Vec&)> raw;

    double operator()(const Vec& x) const { return raw(x - shift) + f_offset; }
};

struct CatalogueEntry {
    std::string id;
    std::string formula;
    int min_dim;
};

// Benchmark function identifiers, with formula documentation.
const std::vector<CatalogueEntry>& catalogue_entries();
std::vector<std::string> catalogue();

// Throws unknown_function for ids not in the catalogue; invalid_argument when
// the shift places the optimum outside the (default or given) domain.
ObjectiveFunction make_objective(const std::string& id, int dim,
                                 const Vec& shift = Vec(), double f_offset = 0.0);
ObjectiveFunction make_objective(const std::string& id, int dim, const Domain& domain,
                                 const Vec& shift, double f_offset);

struct AuditEntry {
    long long index;
    Vec x;
    double value;
};

// Budget-accounted evaluation with an audit trail. Out-of-domain queries and
// over-budget requests are hard errors, never clamped.
class BudgetedEvaluator {
public:
    BudgetedEvaluator(const ObjectiveFunction& objective, long long max_evals,
                      std::ostream* audit_stream = nullptr);

    double evaluate(const Vec& x);

    const ObjectiveFunction& objective() const { return *objective_; }
    long long max_evals() const { return max_evals_; }
    long long used() const { return used_; }
    long long remaining() const { return max_evals_ - used_; }
    const std::vector<AuditEntry>& audit_log() const { return audit_; }

private:
    const ObjectiveFunction* objective_;
    long long max_evals_;
    long long used_ = 0;
    std::vector<AuditEntry> audit_;
    std::ostream* stream_;
};

// n i.i.d. uniform points in the box; deterministic given the stream state.
std::vector<Vec> sample_uniform(const Domain& domain, int n, RngStream& rng);

// one audit line: eval_index,function_id,dim,x_1,...,x_D,f_value (17 sig digits)
std::string format_audit_line(const AuditEntry& e, const std::string& function_id, int dim);

}  // namespace divtr
