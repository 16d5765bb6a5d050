#pragma once

#include <cmath>
#include <limits>

#include "aml/errors.hpp"

namespace aml {

/// Open validity interval of a scalar CGF.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double u) const { return u > lo && u < hi; }
};

enum class KernelKind {
    uniform_rounding,
    floating_point,
    clipped_exponential,
    gaussian_element,
};

/// One matrix entry's cumulant generating function k(u), parameterized by the
/// observed value (the mean) and the entry's uncertainty model.
///
///   uniform_rounding / floating_point:  k(u) = H u + ln(sinh(w u)/(w u))
///   clipped_exponential (clipped):      k(u) = H u - ln(1 - S u / rate)
///   clipped_exponential (unclipped):    k(u) = H u
///   gaussian_element:                   k(u) = H u + rho^2 u^2 / 2
///
/// The rounding and floating-point variants share one evaluation path; the
/// only difference is whether the half width is a global delta or per entry.
struct ElementKernel {
    KernelKind kind = KernelKind::gaussian_element;
    double mean = 0.0;        // H_ij
    double half_width = 0.0;  // delta (rounding) or D_ij (floating point)
    double rate = 0.0;        // lambda
    bool clipped = false;     // A_ij
    int sign = 1;             // S_ij
    double std_dev = 0.0;     // rho

    static ElementKernel uniform(double mean, double half_width);
    static ElementKernel floating(double mean, double half_width);
    static ElementKernel clipped_exp(double mean, double rate, bool clipped, int sign);
    static ElementKernel gaussian(double mean, double std_dev);
};

namespace detail {

// Taylor switch points for the removable singularity at u = 0.  Below them
// the closed forms cancel catastrophically; at the switch both paths agree to
// ~1e-12.  The third derivative cancels hardest (error ~eps/v^4) and needs a
// larger window with a longer series.
inline constexpr double kSeriesSwitch = 0.125;
inline constexpr double kSeriesSwitchOrder3 = 0.22;

/// ln(sinh(v)/v), even, entire.
double log_sinhc(double v);

/// coth(v) - 1/v, odd.
double coth_gap(double v);

/// 1/v^2 - csch^2(v), even, positive.
double csch2_gap(double v);

/// d/dv [1/v^2 - csch^2(v)] = -2/v^3 + 2 coth(v) csch^2(v), odd.
double csch2_gap_deriv(double v);

/// Kernel derivative of the given order without argument validation; callers
/// must keep u strictly inside the kernel domain.
inline double eval_unchecked(const ElementKernel& k, double u, int order) {
    switch (k.kind) {
        case KernelKind::uniform_rounding:
        case KernelKind::floating_point: {
            const double w = k.half_width;
            const double v = w * u;
            switch (order) {
                case 0: return k.mean * u + log_sinhc(v);
                case 1: return k.mean + w * coth_gap(v);
                case 2: return w * w * csch2_gap(v);
                default: return w * w * w * csch2_gap_deriv(v);
            }
        }
        case KernelKind::clipped_exponential: {
            if (!k.clipped) return order == 0 ? k.mean * u : (order == 1 ? k.mean : 0.0);
            const double s = static_cast<double>(k.sign);
            const double d = k.rate - s * u;
            switch (order) {
                case 0: return k.mean * u - std::log1p(-s * u / k.rate);
                case 1: return k.mean + s / d;
                case 2: return 1.0 / (d * d);
                default: return 2.0 * s / (d * d * d);
            }
        }
        default: {
            const double v2 = k.std_dev * k.std_dev;
            switch (order) {
                case 0: return k.mean * u + 0.5 * v2 * u * u;
                case 1: return k.mean + v2 * u;
                case 2: return v2;
                default: return 0.0;
            }
        }
    }
}

}  // namespace detail

/// Order-th derivative of the scalar CGF at u.  Order 0 is the CGF itself.
double kernel_eval(const ElementKernel& kernel, double u, int order);

/// Maximal open interval on which the CGF is defined; always contains 0.
Interval kernel_domain(const ElementKernel& kernel);

/// Additive measurement noise eta_i ~ N(0, sigma^2).
struct AdditiveNoise {
    explicit AdditiveNoise(double sigma);
    double sigma;
};

/// Derivatives of the additive-noise CGF K(t) = sigma^2 t^2 / 2.
double additive_eval(const AdditiveNoise& noise, double t, int order);

}  // namespace aml
