#pragma once

#include <optional>

#include "aml/model.hpp"

namespace aml {

/// Batched saddle points for all rows of a design at a given x, with the
/// second and third CGF derivatives cached at the solution.
struct SaddleSolution {
    VectorXd t;
    VectorXd k2;        // K''_i(t_i), strictly positive
    VectorXd k3;        // K'''_i(t_i)
    VectorXd residual;  // K'_i(t_i) - y_i
};

/// One row's saddle point.
struct SaddleRow {
    double t = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double residual = 0.0;
};

/// Row-composite CGF derivative in t:
///   K_i^(p)(t) = K_eta^(p)(t) + sum_j x_j^p k_ij^(p)(t x_j),  p in 0..3.
double row_cgf(const UncertainDesign& design, int i, const VectorXd& x, double t, int order);

/// Partials of K_i^(order)(t) with respect to x at fixed t, order in 0..2:
///   d/dx_j K_i   = t k'(u)
///   d/dx_j K'_i  = k'(u) + u k''(u)
///   d/dx_j K''_i = 2 x_j k''(u) + t x_j^2 k'''(u),   u = t x_j.
VectorXd row_cgf_dx(const UncertainDesign& design, int i, const VectorXd& x, double t,
                    int order);

/// Maximal open t-interval containing 0 on which every u_ij = t x_j stays
/// inside its kernel domain.  Only clipped entries with x_j != 0 constrain it.
Interval t_domain(const UncertainDesign& design, int i, const VectorXd& x);

/// Solve K'_i(t) = y_i to |K'_i(t) - y_i| <= tol * (1 + |y_i|).
SaddleRow solve_saddle(const UncertainDesign& design, int i, const VectorXd& x, double y_i,
                       double tol = 1e-10, std::optional<double> warm_start = std::nullopt);

/// Row-wise saddle solve; `warm` supplies previous saddle points as initial
/// guesses (useful across nearby optimizer iterates).
SaddleSolution solve_saddle_all(const UncertainDesign& design, const VectorXd& x,
                                const VectorXd& y, double tol = 1e-10,
                                const SaddleSolution* warm = nullptr);

}  // namespace aml
