// amlreg: approximate-ML regression under design-matrix uncertainty.
//
// Subcommands:
//   fit       estimate x from H.csv / y.csv with OLS, TLS and/or AML
//   simulate  run a seeded Monte Carlo study from a JSON config
//   density   tabulate the saddle-point density of a component sum

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "aml/csv.hpp"
#include "aml/density.hpp"
#include "aml/estimators.hpp"
#include "aml/experiments.hpp"
#include "aml/svg.hpp"

namespace {

using aml::format_double;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;

struct FitArgs {
    std::string design_path, obs_path, out_path;
    std::string model, method = "all";
    double sigma = 0.1;
    double delta = 0.5, lambda = 2.0, gamma = 2.0, rho = 2.0;
    int digits = 2;
    double gtol = 1e-6;
    int max_iters = 500;
};

aml::UncertainDesign build_design(const FitArgs& a, const Eigen::MatrixXd& H) {
    if (a.model == "rounding") return aml::UncertainDesign::rounding(H, a.delta, a.sigma);
    if (a.model == "float")
        return aml::UncertainDesign::floating_point_digits(H, a.digits, a.sigma);
    if (a.model == "clipping")
        return aml::UncertainDesign::clipping(H, a.lambda, a.gamma, a.sigma);
    if (a.model == "gaussian") return aml::UncertainDesign::gaussian(H, a.rho, a.sigma);
    throw aml::ConfigError("unknown model '" + a.model + "'");
}

void write_estimates_csv(const std::string& path, const std::vector<aml::Estimate>& ests) {
    std::ofstream out(path);
    if (!out) throw aml::ConfigError("cannot write '" + path + "'");
    const auto n = ests.empty() ? 0 : ests.front().x_hat.size();
    out << "method,converged,iterations,objective,grad_norm";
    for (Eigen::Index j = 0; j < n; ++j) out << ",x" << j;
    out << '\n';
    for (const aml::Estimate& e : ests) {
        const char* name = e.method == aml::Method::ols   ? "ols"
                           : e.method == aml::Method::tls ? "tls"
                                                          : "aml";
        out << name << ',' << (e.converged ? 1 : 0) << ',' << e.iterations << ','
            << format_double(e.objective) << ',' << format_double(e.grad_norm);
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_double(e.x_hat[j]);
        out << '\n';
    }
}

int run_fit(const FitArgs& a) {
    const Eigen::MatrixXd H = aml::read_matrix_csv(a.design_path);
    const Eigen::VectorXd y = aml::read_vector_csv(a.obs_path);
    if (y.size() != H.rows())
        throw aml::ConfigError("dimension mismatch: H is " + std::to_string(H.rows()) + "x" +
                               std::to_string(H.cols()) + " but y has " +
                               std::to_string(y.size()) + " entries");

    const bool want_ols = a.method == "ols" || a.method == "all";
    const bool want_tls = a.method == "tls" || a.method == "all";
    const bool want_aml = a.method == "aml" || a.method == "all";
    if (!want_ols && !want_tls && !want_aml)
        throw aml::ConfigError("method must be one of ols|tls|aml|all");
    if (want_aml && a.model.empty())
        throw aml::ConfigError("--model is required for the aml method");

    std::vector<aml::Estimate> ests;
    bool unconverged = false;
    if (want_ols) ests.push_back(aml::ols(H, y));
    if (want_tls) ests.push_back(aml::tls(H, y));
    if (want_aml) {
        aml::FitOptions opts;
        opts.gtol = a.gtol;
        opts.max_iters = a.max_iters;
        ests.push_back(aml::aml_fit(build_design(a, H), y, opts));
        unconverged = !ests.back().converged;
    }
    write_estimates_csv(a.out_path, ests);
    for (const aml::Estimate& e : ests) {
        const char* name = e.method == aml::Method::ols   ? "ols"
                           : e.method == aml::Method::tls ? "tls"
                                                          : "aml";
        std::cout << name << ": objective=" << format_double(e.objective)
                  << " converged=" << (e.converged ? 1 : 0) << '\n';
    }
    return unconverged ? kExitNoConvergence : kExitOk;
}

aml::GeneratorSpec spec_from_config(const json& cfg) {
    static const std::set<std::string> known = {
        "command", "model",  "m",     "n",     "values",     "trials",
        "seed",    "sigma",  "delta", "digits", "lambda",    "gamma",
        "rho",     "output", "uniform_lo",     "uniform_hi", "mean_std",
        "timings"};
    for (const auto& [key, _] : cfg.items())
        if (!known.count(key)) throw aml::ConfigError("unknown config key '" + key + "'");
    for (const char* req : {"command", "model", "m", "n", "trials", "seed"})
        if (!cfg.contains(req))
            throw aml::ConfigError("config is missing required key '" + std::string(req) + "'");

    aml::GeneratorSpec spec;
    spec.model = aml::model_from_name(cfg.at("model").get<std::string>());
    spec.m = cfg.at("m").get<int>();
    spec.n = cfg.at("n").get<int>();
    spec.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("sigma")) spec.sigma = cfg.at("sigma").get<double>();
    if (cfg.contains("delta")) spec.delta = cfg.at("delta").get<double>();
    if (cfg.contains("digits")) spec.digits = cfg.at("digits").get<int>();
    if (cfg.contains("lambda")) spec.rate = cfg.at("lambda").get<double>();
    if (cfg.contains("gamma")) spec.clip = cfg.at("gamma").get<double>();
    if (cfg.contains("rho")) spec.rho = cfg.at("rho").get<double>();
    if (cfg.contains("uniform_lo")) spec.uniform_lo = cfg.at("uniform_lo").get<double>();
    if (cfg.contains("uniform_hi")) spec.uniform_hi = cfg.at("uniform_hi").get<double>();
    if (cfg.contains("mean_std")) spec.mean_std = cfg.at("mean_std").get<double>();
    return spec;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    std::ifstream in(config_path);
    if (!in) throw aml::ConfigError("cannot open '" + config_path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw aml::ConfigError("config parse error: " + std::string(e.what()));
    }

    aml::GeneratorSpec spec = spec_from_config(cfg);
    if (seed_override) spec.seed = *seed_override;
    const std::string command = cfg.at("command").get<std::string>();
    const int trials = cfg.at("trials").get<int>();
    const std::string output =
        cfg.contains("output") ? cfg.at("output").get<std::string>() : "csv";
    if (output != "csv" && output != "csv+svg")
        throw aml::ConfigError("output must be 'csv' or 'csv+svg'");

    std::vector<int> values;
    if (command == "sweep_rows" || command == "sweep_cols") {
        if (cfg.contains("values")) {
            values = cfg.at("values").get<std::vector<int>>();
            if (values.empty()) throw aml::ConfigError("'values' must be non-empty");
        } else if (command == "sweep_rows") {
            // Default grid: 8 log-spaced row counts up to 2000.
            const double lo = std::max(spec.n + 1, 21);
            for (int k = 0; k < 8; ++k) {
                const int v = static_cast<int>(std::lround(lo * std::pow(2000.0 / lo, k / 7.0)));
                if (values.empty() || values.back() != v) values.push_back(v);
            }
        } else {
            // Default grid: 8 linearly spaced column counts.
            const int hi = std::min(spec.m - 1, 99);
            for (int k = 0; k < 8; ++k) {
                const int v = 1 + static_cast<int>(std::lround((hi - 1) * (k / 7.0)));
                if (values.empty() || values.back() != v) values.push_back(v);
            }
        }
    } else if (command != "square_study") {
        throw aml::ConfigError("command must be sweep_rows, sweep_cols or square_study");
    }

    std::vector<aml::TrialRecord> records;
    if (command == "sweep_rows")
        records = aml::run_sweep(spec, aml::SweepAxis::rows, values, trials, spec.seed);
    else if (command == "sweep_cols")
        records = aml::run_sweep(spec, aml::SweepAxis::cols, values, trials, spec.seed);
    else
        records = aml::run_square_study(spec, trials);

    // Outputs are byte-identical across reruns; wall times are clock noise,
    // so they are zeroed unless explicitly requested ("timings": true).
    if (!(cfg.contains("timings") && cfg.at("timings").get<bool>()))
        for (aml::TrialRecord& r : records) r.t_ols = r.t_tls = r.t_aml = 0.0;

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/trials.csv");
        if (!out) throw aml::ConfigError("cannot write trials.csv in '" + out_dir + "'");
        aml::write_trials_csv(out, records);
    }
    std::vector<aml::SummaryRow> summary;
    if (!records.empty()) {
        summary = aml::summarize(records);
        std::ofstream out(out_dir + "/summary.csv");
        aml::write_summary_csv(out, summary);
    }

    if (output == "csv+svg" && !records.empty()) {
        if (command == "square_study") {
            std::vector<double> r_ols, r_tls;
            for (const auto& r : records) {
                r_ols.push_back(r.err_aml / r.err_ols);
                r_tls.push_back(r.err_aml / r.err_tls);
            }
            aml::write_histogram(out_dir + "/ratio_aml_ols.svg",
                                 "error ratio AML/OLS (" + aml::model_name(spec.model) + ")",
                                 "ratio", r_ols, 40, 1.0);
            aml::write_histogram(out_dir + "/ratio_aml_tls.svg",
                                 "error ratio AML/TLS (" + aml::model_name(spec.model) + ")",
                                 "ratio", r_tls, 40, 1.0);
        } else {
            const bool rows_axis = command == "sweep_rows";
            aml::Series s_ols{"OLS", {}}, s_tls{"TLS", {}}, s_aml{"AML", {}};
            for (const auto& row : summary) {
                const double v = rows_axis ? row.m : row.n;
                s_ols.points.emplace_back(v, row.med_ols);
                s_tls.points.emplace_back(v, row.med_tls);
                s_aml.points.emplace_back(v, row.med_aml);
            }
            aml::write_line_chart(out_dir + "/medians.svg",
                                  "median relative error (" + aml::model_name(spec.model) + ")",
                                  rows_axis ? "rows m" : "columns n", "median relative error",
                                  {s_ols, s_tls, s_aml}, true, true);
        }
    }
    std::cout << "wrote " << records.size() << " trial records to " << out_dir << '\n';
    return kExitOk;
}

int run_density(const std::string& components, double from, double to, int points, bool oracle,
                bool gaussian_fit, const std::string& out_path) {
    if (points < 1) throw aml::ConfigError("--points must be >= 1");
    if (to < from) throw aml::ConfigError("empty range: --to < --from");
    const aml::ComponentSum cgf(aml::parse_components(components));

    std::ofstream out(out_path);
    if (!out) throw aml::ConfigError("cannot write '" + out_path + "'");
    out << "alpha,saddle";
    if (oracle) out << ",oracle";
    if (gaussian_fit) out << ",gaussian_fit";
    out << '\n';

    for (int i = 0; i < points; ++i) {
        const double alpha =
            points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);
        const aml::SaddlePoint sp = aml::saddle_point(cgf, alpha);
        const double expo = cgf.eval(sp.t0, 0) - sp.t0 * alpha -
                            0.5 * std::log(2.0 * M_PI * sp.k2);
        const double spa = std::exp(expo);
        out << format_double(alpha) << ',' << format_double(spa);
        if (oracle) out << ',' << format_double(aml::convolution_oracle_pdf(cgf.parts(), alpha));
        if (gaussian_fit) out << ',' << format_double(aml::gaussian_fit_density(cgf, alpha));
        out << '\n';
        std::cout << "alpha=" << format_double(alpha) << " t0=" << format_double(sp.t0)
                  << " k2=" << format_double(sp.k2) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate maximum-likelihood regression with design-matrix uncertainty"};
    app.require_subcommand(1);

    FitArgs fa;
    std::uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* fit = app.add_subcommand("fit", "fit a single problem from CSV files");
    fit->add_option("--design", fa.design_path, "m x n design matrix CSV")->required();
    fit->add_option("--obs", fa.obs_path, "length-m observation CSV")->required();
    fit->add_option("--model", fa.model, "rounding|float|clipping|gaussian");
    fit->add_option("--method", fa.method, "ols|tls|aml|all")->required();
    fit->add_option("--sigma", fa.sigma, "additive noise std-dev");
    fit->add_option("--delta", fa.delta, "rounding half width");
    fit->add_option("--digits", fa.digits, "significant figures kept");
    fit->add_option("--lambda", fa.lambda, "exponential rate");
    fit->add_option("--gamma", fa.gamma, "clipping threshold");
    fit->add_option("--rho", fa.rho, "gaussian element std-dev");
    fit->add_option("--gtol", fa.gtol, "gradient tolerance");
    fit->add_option("--max-iters", fa.max_iters, "L-BFGS iteration cap");
    fit->add_option("--out", fa.out_path, "output CSV path")->required();
    fit->add_option("--seed", seed, "unused by fit; accepted for interface uniformity");

    std::string config_path, out_dir;
    CLI::App* sim = app.add_subcommand("simulate", "run a Monte Carlo study from a config");
    sim->add_option("--config", config_path, "JSON run configuration")->required();
    sim->add_option("--out", out_dir, "output directory")->required();
    sim->add_option("--seed", seed, "override the config seed");

    std::string components, density_out;
    double from = 0.0, to = 0.0;
    int points = 0;
    bool oracle = false, gaussian_fit = false;
    CLI::App* den = app.add_subcommand("density", "tabulate a saddle-point density");
    den->add_option("--components", components, "e.g. 'uniform(0,1)+normal(0,1)'")->required();
    den->add_option("--from", from, "grid start")->required();
    den->add_option("--to", to, "grid end")->required();
    den->add_option("--points", points, "grid size")->required();
    den->add_flag("--oracle", oracle, "add quadrature oracle column");
    den->add_flag("--gaussian-fit", gaussian_fit, "add moment-matched normal column");
    den->add_option("--out", density_out, "output CSV path")->required();
    den->add_option("--seed", seed, "unused by density; accepted for interface uniformity");

    try {
        app.parse(argc, argv);
        seed_given = sim->count("--seed") > 0;
        if (*fit) return run_fit(fa);
        if (*sim)
            return run_simulate(config_path, out_dir,
                                seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt);
        return run_density(components, from, to, points, oracle, gaussian_fit, density_out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return kExitUsage;
    } catch (const aml::NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
