#pragma once

#include <string>
#include <vector>

#include "aml/kernels.hpp"

namespace aml {

/// One summand of a scalar random variable y = sum of independent components.
struct Component {
    enum class Kind { normal, uniform, exponential };
    Kind kind;
    double p1 = 0.0;  // mu | lower | rate
    double p2 = 0.0;  // sigma | upper | unused

    static Component normal(double mu, double sigma);
    static Component uniform(double lo, double hi);
    static Component exponential(double rate);

    double mean() const;
    double variance() const;
};

/// Parse "uniform(0,1)+normal(0,1)" style component lists.
std::vector<Component> parse_components(const std::string& spec);

/// CGF of a sum of independent components, with derivatives in t.
class ComponentSum {
  public:
    explicit ComponentSum(std::vector<Component> parts);

    double eval(double t, int order) const;
    Interval t_domain() const;
    double mean() const;
    double variance() const;
    const std::vector<Component>& parts() const { return parts_; }

  private:
    std::vector<Component> parts_;
    std::vector<ElementKernel> kernels_;
};

struct SaddlePoint {
    double t0 = 0.0;
    double k2 = 0.0;
};

/// Saddle point t0 with K'(t0) = alpha; throws NoConvergence when alpha is
/// outside the reachable range of K'.
SaddlePoint saddle_point(const ComponentSum& cgf, double alpha, double tol = 1e-12);

/// Saddle-point density  (2 pi K''(t0))^{-1/2} exp(K(t0) - t0 alpha).
double saddle_density(const ComponentSum& cgf, double alpha);

/// Moment-matched normal density (same mean and variance as the sum).
double gaussian_fit_density(const ComponentSum& cgf, double alpha);

/// Exact density of the component sum by nested adaptive quadrature over the
/// non-Gaussian components (at most 3; cost grows exponentially).  Absolute
/// error ~1e-8.
double convolution_oracle_pdf(const std::vector<Component>& parts, double alpha);

}  // namespace aml
