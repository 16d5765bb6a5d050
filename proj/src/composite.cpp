#include "aml/composite.hpp"

#include <cmath>
#include <string>

#include "aml/scalar_root.hpp"

namespace aml {

namespace {

void check_order(int order, int max) {
    if (order < 0 || order > max)
        throw InvalidOrder("derivative order must be in {0,..," + std::to_string(max) +
                           "}, got " + std::to_string(order));
}

void check_row_domain(const UncertainDesign& design, int i, const VectorXd& x, double t) {
    for (int j = 0; j < design.cols(); ++j) {
        const double u = t * x[j];
        if (!std::isfinite(u) || !kernel_domain(design.kernel(i, j)).contains(u))
            throw DomainError("t*x outside kernel domain at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
}

// K'_i and K''_i in one pass; the solver's inner loop.
std::pair<double, double> row_k1_k2(const UncertainDesign& design, int i, const VectorXd& x,
                                    double t) {
    double k1 = additive_eval(design.additive(), t, 1);
    double k2 = additive_eval(design.additive(), t, 2);
    for (int j = 0; j < design.cols(); ++j) {
        const double xj = x[j];
        const double u = t * xj;
        const ElementKernel& k = design.kernel(i, j);
        k1 += xj * detail::eval_unchecked(k, u, 1);
        k2 += xj * xj * detail::eval_unchecked(k, u, 2);
    }
    return {k1, k2};
}

}  // namespace

double row_cgf(const UncertainDesign& design, int i, const VectorXd& x, double t, int order) {
    check_order(order, 3);
    check_row_domain(design, i, x, t);
    double acc = additive_eval(design.additive(), t, order);
    for (int j = 0; j < design.cols(); ++j) {
        const double xj = x[j];
        const double u = t * xj;
        const double kd = detail::eval_unchecked(design.kernel(i, j), u, order);
        acc += std::pow(xj, order) * kd;
    }
    return acc;
}

VectorXd row_cgf_dx(const UncertainDesign& design, int i, const VectorXd& x, double t,
                    int order) {
    check_order(order, 2);
    check_row_domain(design, i, x, t);
    VectorXd out(design.cols());
    for (int j = 0; j < design.cols(); ++j) {
        const double xj = x[j];
        const double u = t * xj;
        const ElementKernel& k = design.kernel(i, j);
        switch (order) {
            case 0:
                out[j] = t * detail::eval_unchecked(k, u, 1);
                break;
            case 1:
                out[j] = detail::eval_unchecked(k, u, 1) + u * detail::eval_unchecked(k, u, 2);
                break;
            default:
                out[j] = 2.0 * xj * detail::eval_unchecked(k, u, 2) +
                         t * xj * xj * detail::eval_unchecked(k, u, 3);
                break;
        }
    }
    return out;
}

Interval t_domain(const UncertainDesign& design, int i, const VectorXd& x) {
    Interval d;
    for (int j = 0; j < design.cols(); ++j) {
        const ElementKernel& k = design.kernel(i, j);
        if (k.kind != KernelKind::clipped_exponential || !k.clipped) continue;
        const double sx = k.sign * x[j];
        if (sx == 0.0) continue;
        // S_ij t x_j < rate
        const double bound = k.rate / sx;
        if (sx > 0.0)
            d.hi = std::fmin(d.hi, bound);
        else
            d.lo = std::fmax(d.lo, bound);
    }
    return d;
}

SaddleRow solve_saddle(const UncertainDesign& design, int i, const VectorXd& x, double y_i,
                       double tol, std::optional<double> warm_start) {
    const Interval dom = t_domain(design, i, x);
    const double abs_tol = tol * (1.0 + std::fabs(y_i));
    const double init = warm_start.value_or(0.0);

    const auto f = [&](double t) { return row_k1_k2(design, i, x, t).first - y_i; };
    const auto fp = [&](double t) { return row_k1_k2(design, i, x, t).second; };

    const detail::RootResult r = detail::solve_increasing(f, fp, dom.lo, dom.hi, init, abs_tol);

    SaddleRow out;
    out.t = r.t;
    out.residual = r.f;
    out.k2 = row_k1_k2(design, i, x, r.t).second;
    out.k3 = row_cgf(design, i, x, r.t, 3);
    return out;
}

SaddleSolution solve_saddle_all(const UncertainDesign& design, const VectorXd& x,
                                const VectorXd& y, double tol, const SaddleSolution* warm) {
    const int m = design.rows();
    if (y.size() != m) throw std::invalid_argument("observation length does not match rows");
    SaddleSolution sol;
    sol.t.resize(m);
    sol.k2.resize(m);
    sol.k3.resize(m);
    sol.residual.resize(m);
    for (int i = 0; i < m; ++i) {
        std::optional<double> w;
        if (warm && warm->t.size() == m) w = warm->t[i];
        const SaddleRow r = solve_saddle(design, i, x, y[i], tol, w);
        sol.t[i] = r.t;
        sol.k2[i] = r.k2;
        sol.k3[i] = r.k3;
        sol.residual[i] = r.residual;
    }
    return sol;
}

}  // namespace aml
