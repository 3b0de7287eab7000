#include "objectives.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace divtr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exponent i/(D-1) used by several conditioned functions; 0 when D == 1
double dim_frac(int i, int dim) { return dim > 1 ? static_cast<double>(i) / (dim - 1) : 0.0; }

double sphere(const Vec& z) { return z.squaredNorm(); }

double ellipsoid(const Vec& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i) s += std::pow(10.0, 6.0 * dim_frac(i, (int)z.size())) * z[i] * z[i];
    return s;
}

double rastrigin(const Vec& z) {
    double s = 10.0 * z.size();
    for (int i = 0; i < z.size(); ++i) s += z[i] * z[i] - 10.0 * std::cos(kTwoPi * z[i]);
    return s;
}

double buche_rastrigin(const Vec& z) {
    const int d = (int)z.size();
    double sq = 0.0, cs = 0.0;
    for (int i = 0; i < d; ++i) {
        double s = std::pow(10.0, 0.5 * dim_frac(i, d));
        if (i % 2 == 0 && z[i] > 0.0) s *= 10.0;  // odd coordinates (1-based) are penalised
        const double t = s * z[i];
        sq += t * t;
        cs += std::cos(kTwoPi * t);
    }
    return 10.0 * (d - cs) + sq;
}

double linear_slope(const Vec& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i) s -= std::pow(10.0, dim_frac(i, (int)z.size())) * z[i];
    return s;
}

double attractive_sector(const Vec& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i) {
        const double w = z[i] > 0.0 ? 100.0 : 1.0;
        s += w * w * z[i] * z[i];
    }
    return s;
}

double rosenbrock(const Vec& z) {
    double s = 0.0;
    for (int i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i + 1] - z[i] * z[i];
        const double b = 1.0 - z[i];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double ackley(const Vec& z) {
    const int d = (int)z.size();
    const double rms = std::sqrt(z.squaredNorm() / d);
    double cs = 0.0;
    for (int i = 0; i < d; ++i) cs += std::cos(kTwoPi * z[i]);
    return -20.0 * std::exp(-0.2 * rms) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

// Griewank-Rosenbrock composite; optimum moved to z = 0 via u = z + 1
double griewank_rosenbrock(const Vec& z) {
    const int d = (int)z.size();
    double acc = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        const double ui = z[i] + 1.0, un = z[i + 1] + 1.0;
        const double a = ui * ui - un;
        const double b = ui - 1.0;
        const double s = 100.0 * a * a + b * b;
        acc += s / 4000.0 - std::cos(s);
    }
    return 10.0 / (d - 1) * acc + 10.0;
}

double different_powers(const Vec& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i)
        s += std::pow(std::abs(z[i]), 2.0 + 4.0 * dim_frac(i, (int)z.size()));
    return std::sqrt(s);
}

double sharp_ridge(const Vec& z) {
    double tail = 0.0;
    for (int i = 1; i < z.size(); ++i) tail += z[i] * z[i];
    return z[0] * z[0] + 100.0 * std::sqrt(tail);
}

double weierstrass(const Vec& z) {
    constexpr int kTerms = 12;  // a^k down to ~2.4e-4
    constexpr double a = 0.5, b = 3.0;
    double per_dim_min = 0.0;
    {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k < kTerms; ++k, ak *= a, bk *= b)
            per_dim_min += ak * std::cos(std::numbers::pi * bk);
    }
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i) {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k < kTerms; ++k, ak *= a, bk *= b)
            s += ak * std::cos(kTwoPi * bk * (z[i] + 0.5));
    }
    return s - z.size() * per_dim_min;
}

double schaffers_f7(const Vec& z) {
    const int d = (int)z.size();
    double acc = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        const double s = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double sn = std::sin(50.0 * std::pow(s, 0.2));
        acc += std::sqrt(s) * (1.0 + sn * sn);
    }
    acc /= (d - 1);
    return acc * acc;
}

double katsuura(const Vec& z) {
    const int d = (int)z.size();
    const double expo = 10.0 / std::pow(d, 1.2);
    double prod = 1.0;
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 1; j <= 32; ++j) {
            const double v = std::ldexp(z[i], j);
            s += std::abs(v - std::nearbyint(v)) / std::ldexp(1.0, j);
        }
        prod *= std::pow(1.0 + (i + 1) * s, expo);
    }
    return 10.0 / (d * d) * (prod - 1.0);
}

// Two-funnel bi-Rastrigin; coordinates doubled so the second funnel stays
// inside [-5,5]^D, optimum funnel at z = 0.
double lunacek_bi_rastrigin(const Vec& z) {
    const int d = (int)z.size();
    constexpr double mu0 = 2.5, depth = 1.0;
    const double s = 1.0 - 1.0 / (2.0 * std::sqrt(d + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - depth) / s);
    double q0 = 0.0, q1 = 0.0, cs = 0.0;
    for (int i = 0; i < d; ++i) {
        const double t = 2.0 * z[i] + mu0;
        q0 += (t - mu0) * (t - mu0);
        q1 += (t - mu1) * (t - mu1);
        cs += std::cos(kTwoPi * (t - mu0));
    }
    return std::min(q0, depth * d + s * q1) + 10.0 * (d - cs);
}

struct Entry {
    CatalogueEntry meta;
    double (*raw)(const Vec&);
    bool boundary_optimal;     // optimum sits on the domain boundary (slope-type)
    double optimum_z_offset;   // raw optimum at z = offset * ones
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"sphere", "sum z_i^2", 1}, sphere, false, 0.0},
        {{"ellipsoid", "sum 10^(6(i-1)/(D-1)) z_i^2 (condition 1e6)", 1}, ellipsoid, false, 0.0},
        {{"rastrigin", "10 D + sum(z_i^2 - 10 cos(2 pi z_i))", 1}, rastrigin, false, 0.0},
        {{"buche-rastrigin-analogue",
          "rastrigin with scales 10^((i-1)/(2(D-1))), x10 on positive odd coordinates", 1},
         buche_rastrigin, false, 0.0},
        {{"linear-slope", "-sum 10^((i-1)/(D-1)) z_i; domain optimum at the upper corner", 1},
         linear_slope, true, 0.0},
        {{"attractive-sector", "sum (s_i z_i)^2 with s_i = 100 when z_i > 0, else 1", 1},
         attractive_sector, false, 0.0},
        {{"rosenbrock", "sum 100 (z_{i+1} - z_i^2)^2 + (1 - z_i)^2; optimum at z = 1", 2},
         rosenbrock, false, 1.0},
        {{"ackley", "-20 exp(-0.2 rms(z)) - exp(mean cos(2 pi z_i)) + 20 + e", 1}, ackley, false, 0.0},
        {{"griewank-rosenbrock-analogue",
          "10/(D-1) sum(s_i/4000 - cos s_i) + 10, s_i the Rosenbrock terms of z + 1", 2},
         griewank_rosenbrock, false, 0.0},
        {{"different-powers", "sqrt(sum |z_i|^(2 + 4(i-1)/(D-1)))", 1}, different_powers, false, 0.0},
        {{"sharp-ridge", "z_1^2 + 100 sqrt(sum_{i>1} z_i^2)", 1}, sharp_ridge, false, 0.0},
        {{"weierstrass-analogue",
          "sum_i sum_k 0.5^k cos(2 pi 3^k (z_i + 1/2)) - D min, 12 terms", 1},
         weierstrass, false, 0.0},
        {{"schaffers-f7", "(mean_i sqrt(s_i)(1 + sin^2(50 s_i^0.2)))^2, s_i = |(z_i, z_{i+1})|", 2},
         schaffers_f7, false, 0.0},
        {{"katsuura", "10/D^2 (prod_i (1 + i sum_j |2^j z_i - [2^j z_i]| 2^-j)^(10/D^1.2) - 1)", 1},
         katsuura, false, 0.0},
        {{"lunacek-bi-rastrigin",
          "min(|t - mu0|^2, D + s |t - mu1|^2) + 10(D - sum cos(2 pi (t - mu0))), t = 2z + mu0", 1},
         lunacek_bi_rastrigin, false, 0.0},
    };
    return entries;
}

const Entry& find_entry(const std::string& id) {
    for (const auto& e : registry())
        if (e.meta.id == id) return e;
    throw Error(ErrorCode::unknown_function, "unknown objective function: " + id);
}

}  // namespace

Domain Domain::box(int dim, double lo, double hi) {
    if (dim < 1) throw Error(ErrorCode::invalid_argument, "Domain: dim must be positive");
    if (lo >= hi) throw Error(ErrorCode::invalid_argument, "Domain: lower must be below upper");
    Domain d;
    d.dim = dim;
    d.lower = Vec::Constant(dim, lo);
    d.upper = Vec::Constant(dim, hi);
    return d;
}

bool Domain::contains(const Vec& x) const {
    if (x.size() != dim) return false;
    for (int i = 0; i < dim; ++i)
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
}

Vec Domain::to_unit(const Vec& x) const {
    Vec u(dim);
    for (int i = 0; i < dim; ++i) {
        const double w = upper[i] - lower[i];
        u[i] = w > 0.0 ? (x[i] - lower[i]) / w : 0.0;
    }
    return u;
}

Vec Domain::from_unit(const Vec& u) const {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = lower[i] + u[i] * (upper[i] - lower[i]);
    return x;
}

const std::vector<CatalogueEntry>& catalogue_entries() {
    static const std::vector<CatalogueEntry> metas = [] {
        std::vector<CatalogueEntry> v;
        for (const auto& e : registry()) v.push_back(e.meta);
        return v;
    }();
    return metas;
}

std::vector<std::string> catalogue() {
    std::vector<std::string> ids;
    for (const auto& e : registry()) ids.push_back(e.meta.id);
    return ids;
}

ObjectiveFunction make_objective(const std::string& id, int dim, const Vec& shift, double f_offset) {
    return make_objective(id, dim, Domain::box(dim), shift, f_offset);
}

ObjectiveFunction make_objective(const std::string& id, int dim, const Domain& domain,
                                 const Vec& shift, double f_offset) {
    const Entry& entry = find_entry(id);
    if (dim < entry.meta.min_dim)
        throw Error(ErrorCode::invalid_argument, id + " requires dim >= " + std::to_string(entry.meta.min_dim));
    if (domain.dim != dim)
        throw dimension_mismatch("objective dim does not match domain dim");

    ObjectiveFunction f;
    f.id = id;
    f.domain = domain;
    f.shift = shift.size() == 0 ? Vec::Zero(dim) : shift;
    if (f.shift.size() != dim) throw dimension_mismatch("shift dim does not match objective dim");
    f.f_offset = f_offset;
    f.raw = entry.raw;

    if (entry.boundary_optimal) {
        f.optimum_location = domain.upper;
        f.known_optimum_value = entry.raw(f.optimum_location - f.shift) + f_offset;
    } else {
        f.optimum_location = f.shift + Vec::Constant(dim, entry.optimum_z_offset);
        f.known_optimum_value = f_offset;
        for (int i = 0; i < dim; ++i)
            if (f.optimum_location[i] <= domain.lower[i] || f.optimum_location[i] >= domain.upper[i])
                throw Error(ErrorCode::invalid_argument,
                            "shift places the optimum of " + id + " outside the domain");
    }
    return f;
}

BudgetedEvaluator::BudgetedEvaluator(const ObjectiveFunction& objective, long long max_evals,
                                     std::ostream* audit_stream)
    : objective_(&objective), max_evals_(max_evals), stream_(audit_stream) {
    if (max_evals < 1) throw Error(ErrorCode::invalid_argument, "max_evals must be positive");
}

double BudgetedEvaluator::evaluate(const Vec& x) {
    if (used_ == max_evals_)
        throw budget_exhausted("evaluation budget of " + std::to_string(max_evals_) + " exhausted");
    if (!objective_->domain.contains(x)) throw out_of_domain("query outside the box domain");
    const double value = (*objective_)(x);
    audit_.push_back({used_, x, value});
    if (stream_) *stream_ << format_audit_line(audit_.back(), objective_->id, objective_->domain.dim) << '\n';
    ++used_;
    return value;
}

std::vector<Vec> sample_uniform(const Domain& domain, int n, RngStream& rng) {
    std::vector<Vec> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec x(domain.dim);
        for (int j = 0; j < domain.dim; ++j)
            x[j] = domain.lower[j] + rng.uniform() * (domain.upper[j] - domain.lower[j]);
        pts.push_back(std::move(x));
    }
    return pts;
}

std::string format_audit_line(const AuditEntry& e, const std::string& function_id, int dim) {
    char buf[64];
    std::string line = std::to_string(e.index) + ',' + function_id + ',' + std::to_string(dim);
    for (int i = 0; i < dim; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.x[i]);
        line += ',';
        line += buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", e.value);
    line += ',';
    line += buf;
    return line;
}

}  // namespace divtr
