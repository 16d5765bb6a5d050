#include "aml/likelihood.hpp"

#include <cmath>

namespace aml {

namespace {

// Tighter than the solver default: gradient/finite-difference agreement is
// limited by the saddle residual, and Newton makes the extra digits cheap.
constexpr double kSaddleTol = 1e-12;

}  // namespace

LogLikelihoodEval log_likelihood_eval(const UncertainDesign& design, const VectorXd& y,
                                      const VectorXd& x, bool with_gradient,
                                      const SaddleSolution* warm) {
    const int m = design.rows();
    const int n = design.cols();
    if (y.size() != m) throw std::invalid_argument("observation length does not match rows");
    if (x.size() != n) throw std::invalid_argument("parameter length does not match columns");

    LogLikelihoodEval out;
    out.x = x;
    out.saddle = solve_saddle_all(design, x, y, kSaddleTol, warm);
    if (with_gradient) out.gradient = VectorXd::Zero(n);

    double value = 0.0;
    for (int i = 0; i < m; ++i) {
        const double t = out.saddle.t[i];
        const double k2 = out.saddle.k2[i];
        value += row_cgf(design, i, x, t, 0) - 0.5 * std::log(k2) - t * y[i];
        if (!with_gradient) continue;

        // dl/dt_i keeps the residual term of the full expression; it vanishes
        // at an exact saddle but keeps the gradient consistent with the value
        // actually computed at an inexact one.
        const double dldt = out.saddle.residual[i] - 0.5 * out.saddle.k3[i] / k2;
        for (int j = 0; j < n; ++j) {
            const double xj = x[j];
            const double u = t * xj;
            const ElementKernel& k = design.kernel(i, j);
            const double k1e = detail::eval_unchecked(k, u, 1);
            const double k2e = detail::eval_unchecked(k, u, 2);
            const double k3e = detail::eval_unchecked(k, u, 3);
            const double dK_dx = t * k1e;
            const double dK2_dx = 2.0 * xj * k2e + t * xj * xj * k3e;
            const double dq_dx = k1e + u * k2e;
            out.gradient[j] += dK_dx - 0.5 * dK2_dx / k2 - (dldt / k2) * dq_dx;
        }
    }
    out.value = value;
    return out;
}

LogLikelihoodEval log_likelihood(const UncertainDesign& design, const VectorXd& y,
                                 const VectorXd& x) {
    return log_likelihood_eval(design, y, x, /*with_gradient=*/false);
}

VectorXd log_likelihood_gradient(const UncertainDesign& design, const VectorXd& y,
                                 const VectorXd& x) {
    return log_likelihood_eval(design, y, x, /*with_gradient=*/true).gradient;
}

double gaussian_log_likelihood(const MatrixXd& H, const VectorXd& y, double sigma, double rho,
                               const VectorXd& x) {
    const double v = sigma * sigma + rho * rho * x.squaredNorm();
    if (!(v > 0.0)) throw DegenerateVariance("sigma^2 + rho^2 ||x||^2 must be positive");
    const double rss = (y - H * x).squaredNorm();
    return -0.5 * (rss / v + static_cast<double>(H.rows()) * std::log(v));
}

VectorXd gaussian_gradient(const MatrixXd& H, const VectorXd& y, double sigma, double rho,
                           const VectorXd& x) {
    const double v = sigma * sigma + rho * rho * x.squaredNorm();
    if (!(v > 0.0)) throw DegenerateVariance("sigma^2 + rho^2 ||x||^2 must be positive");
    const VectorXd r = H * x - y;
    const double m = static_cast<double>(H.rows());
    return (rho * rho * (r.squaredNorm() / v - m) * x - H.transpose() * r) / v;
}

}  // namespace aml
