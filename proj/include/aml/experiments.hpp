#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aml/estimators.hpp"
#include "aml/rng.hpp"

namespace aml {

enum class ModelKind { rounding, floating_point, exp_clipping, gaussian_design };

std::string model_name(ModelKind m);
ModelKind model_from_name(const std::string& name);

/// Monte Carlo problem generator settings; defaults reproduce the paper's
/// simulation protocol at the stated parameter values.
struct GeneratorSpec {
    ModelKind model = ModelKind::rounding;
    int m = 0;
    int n = 0;
    double sigma = 0.1;

    // rounding: base uniform support and rounding half width
    double uniform_lo = 0.0;
    double uniform_hi = 10.0;
    double delta = 0.5;

    // floating point: significant figures kept, exponent range 10^{min..max}
    int digits = 2;
    int exp_min = 0;
    int exp_max = 3;

    // exponential clipping
    double rate = 2.0;
    double clip = 2.0;

    // gaussian design
    double mean_std = 10.0;  // the observed means are N(0, mean_std^2)
    double rho = 2.0;

    std::uint64_t seed = 0;

    void validate() const;
};

/// One generated instance: the uncertainty model built from the observed H,
/// the observation y, and the latent truth used to score estimators.
struct Problem {
    UncertainDesign design;
    VectorXd y;
    VectorXd x_tru;
    MatrixXd g_true;
    VectorXd noise;  // the standard normal draw z with y = G x + sigma z
};

Problem generate_problem(const GeneratorSpec& spec);

/// y_i = sum_j G_ij x_j + sigma z_i, accumulated in a fixed order so repeated
/// assembly from the stored pieces is bitwise reproducible.
VectorXd assemble_observation(const MatrixXd& g, const VectorXd& x, double sigma,
                              const VectorXd& z);

/// ||x_est - x_tru|| / ||x_tru||.
double relative_error(const VectorXd& x_est, const VectorXd& x_tru);

struct TrialRecord {
    ModelKind model;
    int m = 0;
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double err_ols = 0.0;
    double err_tls = 0.0;
    double err_aml = 0.0;
    bool tls_degenerate = false;
    bool aml_converged = false;
    double t_ols = 0.0;
    double t_tls = 0.0;
    double t_aml = 0.0;
};

enum class SweepAxis { rows, cols };

/// Monte Carlo sweep across grid values of m or n.  All three estimators see
/// identical (H, y) per trial; per-trial streams derive from
/// (seed, grid value, trial index) so results do not depend on run order.
std::vector<TrialRecord> run_sweep(const GeneratorSpec& base, SweepAxis axis,
                                   const std::vector<int>& values, int trials,
                                   std::uint64_t seed);

/// Error-distribution study at a single (m, n) grid point.
std::vector<TrialRecord> run_square_study(const GeneratorSpec& spec, int trials);

struct SummaryRow {
    ModelKind model;
    int m = 0;
    int n = 0;
    int trials = 0;
    double med_ols = 0.0, q1_ols = 0.0, q3_ols = 0.0;
    double med_tls = 0.0, q1_tls = 0.0, q3_tls = 0.0;
    double med_aml = 0.0, q1_aml = 0.0, q3_aml = 0.0;
    double med_ratio_aml_ols = 0.0;
    double med_ratio_aml_tls = 0.0;
    int tls_degenerate = 0;
    int aml_unconverged = 0;
};

/// Per grid point medians/quartiles (midpoint convention) and per-trial
/// error-ratio medians.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// Interpolated quantile (type 7); q = 0.5 is the even/odd midpoint median.
double quantile(std::vector<double> values, double q);

}  // namespace aml
