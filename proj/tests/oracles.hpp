// Independent test oracles: matrix-form CGF assemblies, piecewise-polynomial
// Irwin-Hall density, bisection-only root finding, finite differences and a
// normal-equations least-squares solve.  These deliberately avoid the library
// code paths they are used to check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "aml/model.hpp"

namespace oracles {

using Eigen::ArrayXXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Floating-point / rounding model, matrix forms (M = D .* (t x^T)):
//   K    = sigma^2 t^2/2 + t .* (H x) + [ln(sinh M ./ M)] 1
//   K'   = sigma^2 t + H x + [D .* coth M] x - n (1 ./ t)
//   K''  = sigma^2 1 - [D^2 .* csch^2 M] x^2 + n (1 ./ t^2)
//   K''' = 2 [D^3 .* coth M .* csch^2 M] x^3 - 2 n (1 ./ t^3)
// Valid only away from t x_j = 0.

struct UniformRows {
    MatrixXd H;
    MatrixXd D;
    double sigma;

    ArrayXXd M(const VectorXd& t, const VectorXd& x) const {
        return D.array() * (t * x.transpose()).array();
    }

    VectorXd K(const VectorXd& t, const VectorXd& x, int order) const {
        const ArrayXXd m = M(t, x);
        const ArrayXXd coth = 1.0 / m.tanh();
        const ArrayXXd csch2 = 1.0 / (m.sinh() * m.sinh());
        const double s2 = sigma * sigma;
        const double n = static_cast<double>(H.cols());
        switch (order) {
            case 0:
                return (0.5 * s2 * t.array().square()).matrix() +
                       (t.array() * (H * x).array()).matrix() +
                       (m.sinh() / m).log().matrix() * VectorXd::Ones(H.cols());
            case 1:
                return s2 * t + H * x + (D.array() * coth).matrix() * x -
                       n * t.cwiseInverse();
            case 2:
                return (s2 + n * t.array().square().inverse()).matrix() -
                       (D.array().square() * csch2).matrix() * x.array().square().matrix();
            default:
                return 2.0 * (D.array().cube() * coth * csch2).matrix() *
                           x.array().cube().matrix() -
                       2.0 * n * t.array().cube().inverse().matrix();
        }
    }

    MatrixXd dKdx(const VectorXd& t, const VectorXd& x, int order) const {
        const ArrayXXd m = M(t, x);
        const ArrayXXd coth = 1.0 / m.tanh();
        const ArrayXXd csch2 = 1.0 / (m.sinh() * m.sinh());
        const ArrayXXd t1 = (t * Eigen::RowVectorXd::Ones(H.cols())).array();
        switch (order) {
            case 0:
                return (t1 * (H.array() + D.array() * coth)).matrix() -
                       VectorXd::Ones(H.rows()) * x.cwiseInverse().transpose();
            case 1:
                return H + (D.array() * coth - D.array() * m * csch2).matrix();
            default: {
                const ArrayXXd tx2 =
                    (t * x.array().square().matrix().transpose()).array();
                return (2.0 * D.array().square() * csch2 *
                        ((D.array() * tx2) * coth -
                         (VectorXd::Ones(H.rows()) * x.transpose()).array()))
                    .matrix();
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Exponential clipping model (Lambda = lambda, C = S .* (t x^T)):
//   K    = sigma^2 t^2/2 + t .* (H x) + [A .* ln(Lambda ./ (Lambda - C))] 1
//   K'   = sigma^2 t + H x + [A .* S ./ (Lambda - C)] x
//   K''  = sigma^2 1 + [A ./ (Lambda - C)^2] x^2
//   K''' = 2 [A .* S ./ (Lambda - C)^3] x^3

struct ClippingRows {
    MatrixXd H;
    MatrixXd A;
    MatrixXd S;
    double lambda;
    double sigma;

    ArrayXXd gap(const VectorXd& t, const VectorXd& x) const {
        return lambda - (S.array() * (t * x.transpose()).array());
    }

    VectorXd K(const VectorXd& t, const VectorXd& x, int order) const {
        const ArrayXXd g = gap(t, x);
        const double s2 = sigma * sigma;
        switch (order) {
            case 0:
                return (0.5 * s2 * t.array().square()).matrix() +
                       (t.array() * (H * x).array()).matrix() +
                       (A.array() * (lambda / g).log()).matrix() * VectorXd::Ones(H.cols());
            case 1:
                return s2 * t + H * x + (A.array() * S.array() / g).matrix() * x;
            case 2:
                return VectorXd::Constant(H.rows(), s2) +
                       (A.array() / g.square()).matrix() * x.array().square().matrix();
            default:
                return 2.0 * (A.array() * S.array() / g.cube()).matrix() *
                       x.array().cube().matrix();
        }
    }

    MatrixXd dKdx(const VectorXd& t, const VectorXd& x, int order) const {
        const ArrayXXd g = gap(t, x);
        const ArrayXXd t1 = (t * Eigen::RowVectorXd::Ones(H.cols())).array();
        const ArrayXXd txT = (t * x.transpose()).array();
        switch (order) {
            case 0:
                return (t1 * (H.array() + A.array() * S.array() / g)).matrix();
            case 1:
                return H + (A.array() * (S.array() / g + txT / g.square())).matrix();
            default: {
                const ArrayXXd x_row = (VectorXd::Ones(H.rows()) * x.transpose()).array();
                const ArrayXXd tx2 = (t * x.array().square().matrix().transpose()).array();
                return (2.0 * A.array() * (x_row / g.square() + S.array() * tx2 / g.cube()))
                    .matrix();
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Irwin-Hall: sum of n iid Uniform(0,1).  Long double accumulation tames the
// alternating-sum cancellation up to n ~ 25.

inline double irwin_hall_pdf(int n, double x) {
    if (x <= 0.0 || x >= n) return 0.0;
    long double acc = 0.0L;
    long double binom = 1.0L;  // C(n, k)
    for (int k = 0; k <= static_cast<int>(x); ++k) {
        const long double base = static_cast<long double>(x - k);
        long double pw = 1.0L;
        for (int p = 0; p < n - 1; ++p) pw *= base;
        acc += (k % 2 == 0 ? 1.0L : -1.0L) * binom * pw;
        binom = binom * (n - k) / (k + 1);
    }
    long double fact = 1.0L;
    for (int p = 2; p <= n - 1; ++p) fact *= p;
    return static_cast<double>(acc / fact);
}

inline double irwin_hall_cdf(int n, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= n) return 1.0;
    long double acc = 0.0L;
    long double binom = 1.0L;
    for (int k = 0; k <= static_cast<int>(x); ++k) {
        const long double base = static_cast<long double>(x - k);
        long double pw = 1.0L;
        for (int p = 0; p < n; ++p) pw *= base;
        acc += (k % 2 == 0 ? 1.0L : -1.0L) * binom * pw;
        binom = binom * (n - k) / (k + 1);
    }
    long double fact = 1.0L;
    for (int p = 2; p <= n; ++p) fact *= p;
    return static_cast<double>(acc / fact);
}

/// Quantile of the Irwin-Hall distribution by bisection on the CDF.
inline double irwin_hall_quantile(int n, double p) {
    double lo = 0.0, hi = static_cast<double>(n);
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (irwin_hall_cdf(n, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

/// Plain bisection for K'(t) = y on a bracketing interval; no Newton steps.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          int steps = 200) {
    double flo = f(lo);
    if (flo > 0.0) throw std::runtime_error("bisect_root: bad bracket");
    for (int k = 0; k < steps; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double u, double h) {
    return (f(u + h) - f(u - h)) / (2.0 * h);
}

/// Least squares by normal equations (A^T A) x = A^T y.
inline VectorXd normal_equations_ols(const MatrixXd& A, const VectorXd& y) {
    return (A.transpose() * A).ldlt().solve(A.transpose() * y);
}

/// TLS from the right singular vector of [A, y]:
///   x = -v_{1:n} / v_{n+1} for the vector paired with the smallest singular
///   value of the augmented matrix.
inline VectorXd tls_singular_vector(const MatrixXd& A, const VectorXd& y) {
    MatrixXd aug(A.rows(), A.cols() + 1);
    aug << A, y;
    Eigen::JacobiSVD<MatrixXd> svd(aug, Eigen::ComputeThinV);
    const VectorXd v = svd.matrixV().col(A.cols());
    if (std::fabs(v[A.cols()]) < 1e-12) throw std::runtime_error("degenerate TLS instance");
    return -v.head(A.cols()) / v[A.cols()];
}

}  // namespace oracles
