#pragma once

#include <cmath>
#include <utility>

#include "aml/errors.hpp"

namespace aml::detail {

struct RootResult {
    double t = 0.0;
    double f = 0.0;  // residual at t
    int iters = 0;
};

/// Solve f(t) = 0 for a strictly increasing f on the open interval (lo, hi),
/// 0 interior.  Safeguarded Newton: a bracket is grown geometrically from the
/// initial guess (halving toward any finite barrier, where f blows up), then
/// Newton steps are taken and replaced by bisection whenever they leave the
/// bracket.  `fp` must return f'(t) > 0.
template <class F, class Fp>
RootResult solve_increasing(F&& f, Fp&& fp, double lo, double hi, double init, double abs_tol,
                            int max_iters = 200) {
    const double lo_eff =
        std::isfinite(lo) ? lo + 1e-12 * (1.0 + std::fabs(lo)) : lo;
    const double hi_eff =
        std::isfinite(hi) ? hi - 1e-12 * (1.0 + std::fabs(hi)) : hi;

    double t = init;
    if (!(t > lo_eff)) t = std::isfinite(lo_eff) ? lo_eff : 0.0;
    if (!(t < hi_eff)) t = std::isfinite(hi_eff) ? hi_eff : 0.0;

    double ft = f(t);
    int iters = 0;
    if (std::fabs(ft) <= abs_tol) return {t, ft, iters};

    // Grow a sign-changing bracket [a, b] away from t.
    double a, b, fa, fb;
    {
        const double dir = ft < 0.0 ? 1.0 : -1.0;  // root lies in direction dir
        const double barrier = dir > 0.0 ? hi_eff : lo_eff;
        double base = t, fbase = ft;
        const double slope = fp(t);
        double step = std::fabs(ft) / (slope > 0.0 ? slope : 1.0);
        step = std::fmax(step, 1e-2 * (1.0 + std::fabs(t)));
        bool found = false;
        for (int k = 0; k < 200; ++k) {
            double cand = base + dir * step;
            if (std::isfinite(barrier) && (dir > 0.0 ? cand >= barrier : cand <= barrier))
                cand = 0.5 * (base + barrier);
            const double fc = f(cand);
            ++iters;
            if ((ft < 0.0) != (fc < 0.0) || fc == 0.0) {
                a = dir > 0.0 ? base : cand;
                b = dir > 0.0 ? cand : base;
                fa = dir > 0.0 ? fbase : fc;
                fb = dir > 0.0 ? fc : fbase;
                found = true;
                break;
            }
            base = cand;
            fbase = fc;
            step *= 2.0;
        }
        if (!found)
            throw NoConvergence("saddle bracket search failed", dir > 0.0 ? base : lo_eff,
                                dir > 0.0 ? hi_eff : base);
        if (std::fabs(fb) <= abs_tol) return {b, fb, iters};
        if (std::fabs(fa) <= abs_tol) return {a, fa, iters};
    }

    // fa < 0 < fb from here on.
    t = std::fabs(fa) < std::fabs(fb) ? a : b;
    ft = t == a ? fa : fb;
    for (int k = 0; k < max_iters; ++k) {
        const double slope = fp(t);
        double tn = t - ft / slope;
        if (!(tn > a && tn < b) || !std::isfinite(tn)) tn = 0.5 * (a + b);
        const double ftn = f(tn);
        ++iters;
        if (std::fabs(ftn) <= abs_tol) return {tn, ftn, iters};
        if (ftn < 0.0) {
            a = tn;
            fa = ftn;
        } else {
            b = tn;
            fb = ftn;
        }
        t = tn;
        ft = ftn;
        if (a == b) break;
    }
    throw NoConvergence("saddle Newton iteration cap exceeded", a, b);
}

}  // namespace aml::detail
