#pragma once

#include "aml/composite.hpp"

namespace aml {

/// Approximate log-likelihood at x with optional gradient and the saddle
/// solution it was evaluated at.
struct LogLikelihoodEval {
    double value = 0.0;
    VectorXd gradient;  // empty unless requested
    SaddleSolution saddle;
    VectorXd x;
};

/// ell(x) = sum_i [ K_i(t_i) - ln(K''_i(t_i))/2 - t_i y_i ] at the solved
/// saddle points; the 2 pi constant is dropped.
LogLikelihoodEval log_likelihood(const UncertainDesign& design, const VectorXd& y,
                                 const VectorXd& x);

/// Gradient of ell via implicit differentiation of the saddle constraint:
///   grad = dl/dx - (dl/dt) diag(K'')^{-1} dK'/dx,
///   dl/dt_i = (K'_i - y_i) - K'''_i / (2 K''_i).
VectorXd log_likelihood_gradient(const UncertainDesign& design, const VectorXd& y,
                                 const VectorXd& x);

/// Fused value + gradient sharing one saddle solve per row.  `warm` seeds the
/// row solves with a previous solution's saddle points.
LogLikelihoodEval log_likelihood_eval(const UncertainDesign& design, const VectorXd& y,
                                      const VectorXd& x, bool with_gradient = true,
                                      const SaddleSolution* warm = nullptr);

/// Closed form for the all-Gaussian model,
///   ell(x) = -[ ||y - H x||^2 / v + m ln v ] / 2,  v = sigma^2 + rho^2 ||x||^2.
double gaussian_log_likelihood(const MatrixXd& H, const VectorXd& y, double sigma, double rho,
                               const VectorXd& x);

/// Gradient of the closed form above.
VectorXd gaussian_gradient(const MatrixXd& H, const VectorXd& y, double sigma, double rho,
                           const VectorXd& x);

}  // namespace aml
