#include "aml/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "aml/csv.hpp"

namespace aml {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Round g to `digits` significant decimal figures, half away from zero.
double round_significant(double g, int digits) {
    if (g == 0.0) return 0.0;
    const double e = std::floor(std::log10(std::fabs(g)));
    const double scale = std::pow(10.0, e - (digits - 1));
    return std::round(g / scale) * scale;
}

TrialRecord run_trial(const GeneratorSpec& spec, int trial_index) {
    TrialRecord rec;
    rec.model = spec.model;
    rec.m = spec.m;
    rec.n = spec.n;
    rec.trial = trial_index;
    rec.seed = spec.seed;

    const Problem p = generate_problem(spec);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.err_ols = rec.err_tls = rec.err_aml = nan;

    using clock = std::chrono::steady_clock;
    Estimate ols_est;
    try {
        const auto t0 = clock::now();
        ols_est = ols(p.design.H(), p.y);
        rec.t_ols = seconds_since(t0);
        rec.err_ols = relative_error(ols_est.x_hat, p.x_tru);
    } catch (const std::exception&) {
        return rec;  // flags stay at their failure defaults
    }

    try {
        const auto t0 = clock::now();
        const Estimate tls_est = tls(p.design.H(), p.y);
        rec.t_tls = seconds_since(t0);
        rec.err_tls = relative_error(tls_est.x_hat, p.x_tru);
    } catch (const TlsDegenerate&) {
        rec.tls_degenerate = true;
        rec.err_tls = rec.err_ols;  // OLS fallback, flagged
    }

    try {
        const auto t0 = clock::now();
        FitOptions opts;
        const Estimate aml_est = aml_fit(p.design, p.y, opts);
        rec.t_aml = seconds_since(t0);
        rec.err_aml = relative_error(aml_est.x_hat, p.x_tru);
        rec.aml_converged = aml_est.converged;
    } catch (const std::exception&) {
        rec.aml_converged = false;
    }
    return rec;
}

}  // namespace

std::string model_name(ModelKind m) {
    switch (m) {
        case ModelKind::rounding: return "rounding";
        case ModelKind::floating_point: return "float";
        case ModelKind::exp_clipping: return "clipping";
        default: return "gaussian";
    }
}

ModelKind model_from_name(const std::string& name) {
    if (name == "rounding") return ModelKind::rounding;
    if (name == "float") return ModelKind::floating_point;
    if (name == "clipping") return ModelKind::exp_clipping;
    if (name == "gaussian") return ModelKind::gaussian_design;
    throw ConfigError("unknown model '" + name + "'");
}

void GeneratorSpec::validate() const {
    if (m <= n || n < 1) throw ConfigError("generator requires m > n >= 1");
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (!(uniform_hi > uniform_lo)) throw ConfigError("uniform support is empty");
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    if (digits < 1 || exp_min > exp_max) throw ConfigError("bad floating-point settings");
    if (!(rate > 0.0) || !(clip > 0.0)) throw ConfigError("rate and clip must be positive");
    if (!(mean_std > 0.0) || !(rho >= 0.0)) throw ConfigError("bad gaussian settings");
}

Problem generate_problem(const GeneratorSpec& spec) {
    spec.validate();
    Rng design_rng = Rng::stream(spec.seed, 0);
    Rng truth_rng = Rng::stream(spec.seed, 1);
    Rng noise_rng = Rng::stream(spec.seed, 2);

    const int m = spec.m;
    const int n = spec.n;
    MatrixXd g(m, n);
    MatrixXd H(m, n);

    switch (spec.model) {
        case ModelKind::rounding:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    g(i, j) = design_rng.uniform(spec.uniform_lo, spec.uniform_hi);
                    H(i, j) = std::round(g(i, j));
                }
            break;
        case ModelKind::floating_point:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    const int k = design_rng.uniform_int(spec.exp_min, spec.exp_max);
                    g(i, j) = design_rng.normal() * std::pow(10.0, k);
                    H(i, j) = round_significant(g(i, j), spec.digits);
                }
            break;
        case ModelKind::exp_clipping:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    g(i, j) = design_rng.laplace(spec.rate);
                    H(i, j) = std::copysign(std::fmin(std::fabs(g(i, j)), spec.clip), g(i, j));
                }
            break;
        case ModelKind::gaussian_design:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    H(i, j) = design_rng.normal(0.0, spec.mean_std);
                    g(i, j) = design_rng.normal(H(i, j), spec.rho);
                }
            break;
    }

    VectorXd x_tru(n);
    for (int j = 0; j < n; ++j) x_tru[j] = truth_rng.cauchy();
    VectorXd z(m);
    for (int i = 0; i < m; ++i) z[i] = noise_rng.normal();

    UncertainDesign design = [&] {
        switch (spec.model) {
            case ModelKind::rounding:
                return UncertainDesign::rounding(H, spec.delta, spec.sigma);
            case ModelKind::floating_point:
                return UncertainDesign::floating_point_digits(H, spec.digits, spec.sigma);
            case ModelKind::exp_clipping:
                return UncertainDesign::clipping(H, spec.rate, spec.clip, spec.sigma);
            default:
                return UncertainDesign::gaussian(H, spec.rho, spec.sigma);
        }
    }();

    Problem p{std::move(design), assemble_observation(g, x_tru, spec.sigma, z),
              std::move(x_tru), std::move(g), std::move(z)};
    return p;
}

VectorXd assemble_observation(const MatrixXd& g, const VectorXd& x, double sigma,
                              const VectorXd& z) {
    VectorXd y(g.rows());
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < g.cols(); ++j) acc += g(i, j) * x[j];
        y[i] = acc + sigma * z[i];
    }
    return y;
}

double relative_error(const VectorXd& x_est, const VectorXd& x_tru) {
    const double denom = x_tru.norm();
    if (denom == 0.0) throw ZeroTruth("relative error undefined for a zero truth vector");
    return (x_est - x_tru).norm() / denom;
}

std::vector<TrialRecord> run_sweep(const GeneratorSpec& base, SweepAxis axis,
                                   const std::vector<int>& values, int trials,
                                   std::uint64_t seed) {
    std::vector<TrialRecord> records;
    records.reserve(values.size() * static_cast<std::size_t>(std::max(trials, 0)));
    for (const int value : values) {
        GeneratorSpec spec = base;
        if (axis == SweepAxis::rows)
            spec.m = value;
        else
            spec.n = value;
        spec.validate();
        for (int trial = 0; trial < trials; ++trial) {
            spec.seed = Rng::stream(seed, static_cast<std::uint64_t>(value),
                                    static_cast<std::uint64_t>(trial))
                            .next_u64();
            records.push_back(run_trial(spec, trial));
        }
    }
    return records;
}

std::vector<TrialRecord> run_square_study(const GeneratorSpec& spec, int trials) {
    return run_sweep(spec, SweepAxis::rows, {spec.m}, trials, spec.seed);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw EmptyGroup("quantile of an empty set");
    std::sort(values.begin(), values.end());
    const double pos = q * (static_cast<double>(values.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw EmptyGroup("summarize requires at least one record");
    std::map<std::tuple<std::string, int, int>, std::vector<const TrialRecord*>> groups;
    for (const TrialRecord& r : records)
        groups[{model_name(r.model), r.m, r.n}].push_back(&r);

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.model = model_from_name(std::get<0>(key));
        row.m = std::get<1>(key);
        row.n = std::get<2>(key);
        row.trials = static_cast<int>(group.size());
        std::vector<double> e_ols, e_tls, e_aml, r_ols, r_tls;
        for (const TrialRecord* r : group) {
            e_ols.push_back(r->err_ols);
            e_tls.push_back(r->err_tls);
            e_aml.push_back(r->err_aml);
            r_ols.push_back(r->err_aml / r->err_ols);
            r_tls.push_back(r->err_aml / r->err_tls);
            row.tls_degenerate += r->tls_degenerate ? 1 : 0;
            row.aml_unconverged += r->aml_converged ? 0 : 1;
        }
        row.med_ols = quantile(e_ols, 0.5);
        row.q1_ols = quantile(e_ols, 0.25);
        row.q3_ols = quantile(e_ols, 0.75);
        row.med_tls = quantile(e_tls, 0.5);
        row.q1_tls = quantile(e_tls, 0.25);
        row.q3_tls = quantile(e_tls, 0.75);
        row.med_aml = quantile(e_aml, 0.5);
        row.q1_aml = quantile(e_aml, 0.25);
        row.q3_aml = quantile(e_aml, 0.75);
        row.med_ratio_aml_ols = quantile(r_ols, 0.5);
        row.med_ratio_aml_tls = quantile(r_tls, 0.5);
        rows.push_back(row);
    }
    return rows;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "model,m,n,trial,seed,err_ols,err_tls,err_aml,tls_degenerate,aml_converged,"
          "t_ols,t_tls,t_aml\n";
    for (const TrialRecord& r : records) {
        os << model_name(r.model) << ',' << r.m << ',' << r.n << ',' << r.trial << ',' << r.seed
           << ',' << format_double(r.err_ols) << ',' << format_double(r.err_tls) << ','
           << format_double(r.err_aml) << ',' << (r.tls_degenerate ? 1 : 0) << ','
           << (r.aml_converged ? 1 : 0) << ',' << format_double(r.t_ols) << ','
           << format_double(r.t_tls) << ',' << format_double(r.t_aml) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "model,m,n,trials,med_err_ols,q1_err_ols,q3_err_ols,med_err_tls,q1_err_tls,"
          "q3_err_tls,med_err_aml,q1_err_aml,q3_err_aml,med_ratio_aml_ols,med_ratio_aml_tls,"
          "tls_degenerate,aml_unconverged\n";
    for (const SummaryRow& r : rows) {
        os << model_name(r.model) << ',' << r.m << ',' << r.n << ',' << r.trials << ','
           << format_double(r.med_ols) << ',' << format_double(r.q1_ols) << ','
           << format_double(r.q3_ols) << ',' << format_double(r.med_tls) << ','
           << format_double(r.q1_tls) << ',' << format_double(r.q3_tls) << ','
           << format_double(r.med_aml) << ',' << format_double(r.q1_aml) << ','
           << format_double(r.q3_aml) << ',' << format_double(r.med_ratio_aml_ols) << ','
           << format_double(r.med_ratio_aml_tls) << ',' << r.tls_degenerate << ','
           << r.aml_unconverged << '\n';
    }
}

}  // namespace aml
