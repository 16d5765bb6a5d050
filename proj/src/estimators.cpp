#include "aml/estimators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <limits>

namespace aml {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Objective wrapper: phi(x) = -ell(x); infeasible or non-converging saddle
// evaluations act as +inf so the line search backtracks.
struct NegLogLik {
    const UncertainDesign& design;
    const VectorXd& y;
    SaddleSolution warm;
    bool has_warm = false;

    double eval(const VectorXd& x, VectorXd& grad) {
        try {
            LogLikelihoodEval e =
                log_likelihood_eval(design, y, x, true, has_warm ? &warm : nullptr);
            warm = std::move(e.saddle);
            has_warm = true;
            grad = -e.gradient;
            return -e.value;
        } catch (const DomainError&) {
            return kInf;
        } catch (const NoConvergence&) {
            return kInf;
        }
    }
};

struct LinePoint {
    double alpha = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    VectorXd x;
    VectorXd grad;
};

// Strong Wolfe line search (bracket + zoom), c1 = 1e-4, c2 = 0.9.  Returns
// false only if no point with sufficient decrease was found.
bool wolfe_search(NegLogLik& f, const VectorXd& x0, double phi0, const VectorXd& g0,
                  const VectorXd& d, double alpha_init, LinePoint& out) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    const double dphi0 = g0.dot(d);
    if (dphi0 >= 0.0) return false;

    const auto probe = [&](double alpha, LinePoint& p) {
        p.alpha = alpha;
        p.x = x0 + alpha * d;
        p.phi = f.eval(p.x, p.grad);
        p.dphi = std::isfinite(p.phi) ? p.grad.dot(d) : kInf;
    };

    const auto zoom = [&](LinePoint lo, LinePoint hi) -> bool {
        for (int k = 0; k < 40; ++k) {
            LinePoint mid;
            probe(0.5 * (lo.alpha + hi.alpha), mid);
            if (!std::isfinite(mid.phi) || mid.phi > phi0 + c1 * mid.alpha * dphi0 ||
                mid.phi >= lo.phi) {
                hi = mid;
            } else {
                if (std::fabs(mid.dphi) <= -c2 * dphi0) {
                    out = mid;
                    return true;
                }
                if (mid.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = mid;
            }
            if (std::fabs(hi.alpha - lo.alpha) < 1e-16 * (1.0 + lo.alpha)) break;
        }
        // Settle for sufficient decrease; the curvature pair gets skipped.
        if (lo.alpha > 0.0 && lo.phi < phi0) {
            out = lo;
            return true;
        }
        return false;
    };

    LinePoint prev;
    prev.alpha = 0.0;
    prev.phi = phi0;
    prev.dphi = dphi0;
    double alpha = alpha_init;
    for (int i = 0; i < 30; ++i) {
        LinePoint cur;
        probe(alpha, cur);
        if (!std::isfinite(cur.phi) || cur.phi > phi0 + c1 * alpha * dphi0 ||
            (i > 0 && cur.phi >= prev.phi))
            return zoom(prev, cur);
        if (std::fabs(cur.dphi) <= -c2 * dphi0) {
            out = cur;
            return true;
        }
        if (cur.dphi >= 0.0) return zoom(cur, prev);
        prev = cur;
        alpha *= 2.0;
        if (alpha > 1e10) break;
    }
    if (prev.alpha > 0.0 && prev.phi < phi0) {
        out = prev;
        return true;
    }
    return false;
}

}  // namespace

Estimate ols(const MatrixXd& A, const VectorXd& y) {
    if (A.rows() < A.cols()) throw RankDeficient("ols requires m >= n");
    Eigen::ColPivHouseholderQR<MatrixXd> qr(A);
    if (qr.rank() < A.cols()) throw RankDeficient("design matrix is rank deficient");
    Estimate e;
    e.method = Method::ols;
    e.x_hat = qr.solve(y);
    e.objective = (A * e.x_hat - y).norm();
    e.converged = true;
    return e;
}

Estimate tls(const MatrixXd& A, const VectorXd& y) {
    const auto n = A.cols();
    if (A.rows() <= n) throw RankDeficient("tls requires m > n");
    MatrixXd aug(A.rows(), n + 1);
    aug << A, y;
    const VectorXd sv_aug = aug.jacobiSvd().singularValues();
    const double s = sv_aug[n];  // smallest singular value of [A, y]

    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd sva = svd.singularValues();
    const double lo_gap = sva[n - 1] * sva[n - 1] - s * s;
    const double hi_gap = sva[0] * sva[0] - s * s;
    if (!(lo_gap > 0.0) || hi_gap / lo_gap > 1e12)
        throw TlsDegenerate("A^T A - s^2 I is numerically singular");

    // (A^T A - s^2 I)^{-1} A^T y through the SVD of A.
    const VectorXd uty = svd.matrixU().transpose() * y;
    VectorXd scaled(n);
    for (Eigen::Index k = 0; k < n; ++k) scaled[k] = sva[k] * uty[k] / (sva[k] * sva[k] - s * s);
    Estimate e;
    e.method = Method::tls;
    e.x_hat = svd.matrixV() * scaled;
    e.objective = (A * e.x_hat - y).norm();
    e.converged = true;
    return e;
}

Estimate aml_fit(const UncertainDesign& design, const VectorXd& y, const FitOptions& opts) {
    if (!(opts.gtol > 0.0)) throw std::invalid_argument("gtol must be positive");
    if (opts.max_iters < 1 || opts.memory < 1)
        throw std::invalid_argument("iteration cap and memory must be positive");

    VectorXd x;
    switch (opts.init) {
        case FitOptions::Init::ols: x = ols(design.H(), y).x_hat; break;
        case FitOptions::Init::tls: x = tls(design.H(), y).x_hat; break;
        case FitOptions::Init::zero: x = VectorXd::Zero(design.cols()); break;
        case FitOptions::Init::custom:
            if (opts.init_x.size() != design.cols())
                throw std::invalid_argument("custom initial guess has wrong length");
            x = opts.init_x;
            break;
    }

    NegLogLik f{design, y, {}, false};
    VectorXd g;
    double phi = f.eval(x, g);
    if (!std::isfinite(phi)) throw NoConvergence("objective undefined at initial guess", 0, 0);

    Estimate e;
    e.method = Method::aml;
    e.stop = StopReason::max_iterations;
    e.objective_trace.push_back(-phi);

    std::deque<std::pair<VectorXd, VectorXd>> pairs;  // (s, y) history
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() <= opts.gtol) {
            e.stop = StopReason::converged;
            break;
        }

        // Two-loop recursion for d = -H g.
        VectorXd q = g;
        std::vector<double> alpha_coef(pairs.size());
        for (std::size_t k = pairs.size(); k-- > 0;) {
            const auto& [sk, yk] = pairs[k];
            alpha_coef[k] = sk.dot(q) / yk.dot(sk);
            q -= alpha_coef[k] * yk;
        }
        if (!pairs.empty()) {
            const auto& [sk, yk] = pairs.back();
            q *= sk.dot(yk) / yk.squaredNorm();
        }
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& [sk, yk] = pairs[k];
            const double beta = yk.dot(q) / yk.dot(sk);
            q += (alpha_coef[k] - beta) * sk;
        }
        VectorXd d = -q;
        if (d.dot(g) >= 0.0) d = -g;  // restore descent if history is stale

        const double alpha0 =
            pairs.empty() ? std::fmin(1.0, 1.0 / std::fmax(1.0, g.lpNorm<1>())) : 1.0;
        LinePoint pt;
        if (!wolfe_search(f, x, phi, g, d, alpha0, pt)) {
            // Retry once along steepest descent with the history dropped; a
            // stale inverse-Hessian scale is the usual culprit.
            bool recovered = false;
            if (!pairs.empty()) {
                pairs.clear();
                recovered = wolfe_search(f, x, phi, g, -g,
                                         std::fmin(1.0, 1.0 / std::fmax(1.0, g.lpNorm<1>())), pt);
            }
            if (!recovered) {
                e.stop = StopReason::line_search_failure;
                break;
            }
        }

        const VectorXd s = pt.x - x;
        const VectorXd dy = pt.grad - g;
        const double sy = s.dot(dy);
        if (sy > 1e-10 * s.norm() * dy.norm()) {
            pairs.emplace_back(s, dy);
            if (pairs.size() > static_cast<std::size_t>(opts.memory)) pairs.pop_front();
        }
        x = pt.x;
        phi = pt.phi;
        g = pt.grad;
        e.objective_trace.push_back(-phi);
    }

    e.x_hat = x;
    e.objective = -phi;
    e.iterations = iter;
    e.grad_norm = g.lpNorm<Eigen::Infinity>();
    e.converged = e.grad_norm <= opts.gtol;
    if (e.converged) e.stop = StopReason::converged;
    return e;
}

}  // namespace aml
