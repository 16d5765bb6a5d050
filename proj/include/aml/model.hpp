#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aml/kernels.hpp"

namespace aml {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Full statistical model y = G x + eta: the observed matrix H, one CGF
/// kernel per entry describing the distribution of G_ij about H_ij, and the
/// additive-noise scale.  Immutable after construction.
class UncertainDesign {
  public:
    UncertainDesign(MatrixXd H, std::vector<ElementKernel> kernels, AdditiveNoise additive);

    /// Uniform(H - delta, H + delta) entries (rounding error).
    static UncertainDesign rounding(MatrixXd H, double delta, double sigma);

    /// Per-entry half widths D (floating-point error); D_ij = 0 marks an
    /// exactly known entry.
    static UncertainDesign floating_point(MatrixXd H, MatrixXd D, double sigma);

    /// Half widths inferred from H: half a unit in the last of `digits`
    /// kept significant figures, e.g. H_ij = -3.1e2, digits = 2 -> D_ij = 0.05e2.
    static UncertainDesign floating_point_digits(MatrixXd H, int digits, double sigma);

    /// +-Exponential(rate) uncertainty on entries clipped at |H| = gamma;
    /// unclipped entries are exact.  Clip flags and signs are read off H.
    static UncertainDesign clipping(MatrixXd H, double rate, double gamma, double sigma);

    /// Gaussian entries G_ij ~ N(H_ij, rho^2).
    static UncertainDesign gaussian(MatrixXd H, double rho, double sigma);

    int rows() const { return static_cast<int>(H_.rows()); }
    int cols() const { return static_cast<int>(H_.cols()); }

    const MatrixXd& H() const { return H_; }
    const AdditiveNoise& additive() const { return additive_; }

    const ElementKernel& kernel(int i, int j) const {
        return kernels_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols()) +
                        static_cast<std::size_t>(j)];
    }

  private:
    MatrixXd H_;
    std::vector<ElementKernel> kernels_;  // row major, rows()*cols()
    AdditiveNoise additive_;
};

/// Half a unit in the last kept significant digit of h (0 for h = 0).
double half_ulp_decimal(double h, int digits);

}  // namespace aml
