#include "aml/kernels.hpp"

#include <cmath>
#include <string>

namespace aml {

namespace detail {

namespace {

// Series coefficients come from the Laurent expansions of coth and csch^2:
//   ln(sinh v / v)   = v^2/6 - v^4/180 + v^6/2835 - v^8/37800 + ...
//   coth v - 1/v     = v/3 - v^3/45 + 2v^5/945 - v^7/4725 + 2v^9/93555 - ...
//   1/v^2 - csch^2 v = 1/3 - v^2/15 + 2v^4/189 - v^6/675 + 2v^8/10395 - ...
// The fourth series is the derivative of the third.
constexpr double kBigArg = 700.0;  // sinh overflows just above 710

}  // namespace

double log_sinhc(double v) {
    const double w = std::fabs(v);
    if (w < kSeriesSwitch) {
        const double v2 = v * v;
        return v2 * (1.0 / 6.0 +
                     v2 * (-1.0 / 180.0 + v2 * (1.0 / 2835.0 + v2 * (-1.0 / 37800.0))));
    }
    if (w > kBigArg) return w - std::log(2.0 * w);
    return std::log(std::sinh(w) / w);
}

double coth_gap(double v) {
    const double w = std::fabs(v);
    if (w < kSeriesSwitch) {
        const double v2 = v * v;
        return v * (1.0 / 3.0 +
                    v2 * (-1.0 / 45.0 +
                          v2 * (2.0 / 945.0 + v2 * (-1.0 / 4725.0 + v2 * (2.0 / 93555.0)))));
    }
    return std::copysign(1.0 / std::tanh(w) - 1.0 / w, v);
}

double csch2_gap(double v) {
    const double w = std::fabs(v);
    if (w < kSeriesSwitch) {
        const double v2 = v * v;
        return 1.0 / 3.0 +
               v2 * (-1.0 / 15.0 +
                     v2 * (2.0 / 189.0 + v2 * (-1.0 / 675.0 + v2 * (2.0 / 10395.0))));
    }
    const double s = 1.0 / std::sinh(w);  // 0 once sinh overflows
    return 1.0 / (w * w) - s * s;
}

double csch2_gap_deriv(double v) {
    const double w = std::fabs(v);
    if (w < kSeriesSwitchOrder3) {
        const double v2 = v * v;
        return v * (-2.0 / 15.0 +
                    v2 * (8.0 / 189.0 +
                          v2 * (-2.0 / 225.0 +
                                v2 * (16.0 / 10395.0 +
                                      v2 * (-152020.0 / 638512875.0 +
                                            v2 * (17891328.0 / 523069747200.0))))));
    }
    const double s = 1.0 / std::sinh(w);
    const double r = -2.0 / (w * w * w) + 2.0 * s * s / std::tanh(w);
    return std::copysign(r, -v);
}

}  // namespace detail

ElementKernel ElementKernel::uniform(double mean, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("uniform kernel requires delta > 0");
    ElementKernel k;
    k.kind = KernelKind::uniform_rounding;
    k.mean = mean;
    k.half_width = half_width;
    return k;
}

ElementKernel ElementKernel::floating(double mean, double half_width) {
    if (!(half_width >= 0.0)) throw std::invalid_argument("floating kernel requires D >= 0");
    ElementKernel k;
    k.kind = KernelKind::floating_point;
    k.mean = mean;
    k.half_width = half_width;
    return k;
}

ElementKernel ElementKernel::clipped_exp(double mean, double rate, bool clipped, int sign) {
    if (!(rate > 0.0)) throw std::invalid_argument("clipped kernel requires rate > 0");
    if (sign != 1 && sign != -1) throw std::invalid_argument("clip sign must be +-1");
    ElementKernel k;
    k.kind = KernelKind::clipped_exponential;
    k.mean = mean;
    k.rate = rate;
    k.clipped = clipped;
    k.sign = sign;
    return k;
}

ElementKernel ElementKernel::gaussian(double mean, double std_dev) {
    if (!(std_dev >= 0.0)) throw std::invalid_argument("gaussian kernel requires rho >= 0");
    ElementKernel k;
    k.kind = KernelKind::gaussian_element;
    k.mean = mean;
    k.std_dev = std_dev;
    return k;
}

double kernel_eval(const ElementKernel& kernel, double u, int order) {
    if (order < 0 || order > 3)
        throw InvalidOrder("kernel_eval: order must be in {0,1,2,3}, got " +
                           std::to_string(order));
    if (!std::isfinite(u) || !kernel_domain(kernel).contains(u))
        throw DomainError("kernel_eval: argument " + std::to_string(u) +
                          " outside CGF validity interval");
    return detail::eval_unchecked(kernel, u, order);
}

Interval kernel_domain(const ElementKernel& kernel) {
    Interval d;
    if (kernel.kind == KernelKind::clipped_exponential && kernel.clipped) {
        // Log barrier at S u = rate.
        if (kernel.sign > 0)
            d.hi = kernel.rate;
        else
            d.lo = -kernel.rate;
    }
    return d;
}

AdditiveNoise::AdditiveNoise(double sigma_in) : sigma(sigma_in) {
    if (!(sigma > 0.0)) throw std::invalid_argument("additive noise requires sigma > 0");
}

double additive_eval(const AdditiveNoise& noise, double t, int order) {
    const double s2 = noise.sigma * noise.sigma;
    switch (order) {
        case 0: return 0.5 * s2 * t * t;
        case 1: return s2 * t;
        case 2: return s2;
        case 3: return 0.0;
        default:
            throw InvalidOrder("additive_eval: order must be in {0,1,2,3}, got " +
                               std::to_string(order));
    }
}

}  // namespace aml
