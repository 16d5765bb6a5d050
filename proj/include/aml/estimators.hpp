#pragma once

#include <vector>

#include "aml/likelihood.hpp"

namespace aml {

enum class Method { ols, tls, aml };

enum class StopReason { converged, max_iterations, line_search_failure, direct };

struct Estimate {
    VectorXd x_hat;
    double objective = 0.0;  // final ell for AML, ||Ax - y|| for the baselines
    int iterations = 0;
    bool converged = false;
    Method method = Method::ols;
    double grad_norm = 0.0;  // ||grad ell||_inf at x_hat (AML only)
    StopReason stop = StopReason::direct;
    std::vector<double> objective_trace;  // ell at accepted iterates (AML only)
};

/// Ordinary least squares via Householder QR.
Estimate ols(const MatrixXd& A, const VectorXd& y);

/// Total least squares closed form x = (A^T A - s^2 I)^{-1} A^T y with s the
/// smallest singular value of [A, y], evaluated through the SVD of A.  Throws
/// TlsDegenerate when the shifted system is numerically singular.
Estimate tls(const MatrixXd& A, const VectorXd& y);

struct FitOptions {
    double gtol = 1e-6;
    int max_iters = 500;
    int memory = 10;  // L-BFGS history length
    enum class Init { ols, tls, zero, custom };
    Init init = Init::ols;
    VectorXd init_x;  // used when init == custom
};

/// Maximize the approximate log-likelihood with L-BFGS (strong-Wolfe line
/// search), initialized at the OLS solution by default.
Estimate aml_fit(const UncertainDesign& design, const VectorXd& y,
                 const FitOptions& opts = {});

}  // namespace aml
