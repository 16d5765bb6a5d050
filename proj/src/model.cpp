#include "aml/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aml {

UncertainDesign::UncertainDesign(MatrixXd H, std::vector<ElementKernel> kernels,
                                 AdditiveNoise additive)
    : H_(std::move(H)), kernels_(std::move(kernels)), additive_(additive) {
    const auto m = H_.rows();
    const auto n = H_.cols();
    if (m <= n)
        throw std::invalid_argument("design must be over-determined (m > n), got " +
                                    std::to_string(m) + "x" + std::to_string(n));
    if (kernels_.size() != static_cast<std::size_t>(m * n))
        throw std::invalid_argument("kernel grid does not match design dimensions");
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const ElementKernel& k = kernels_[static_cast<std::size_t>(i * n + j)];
            if (k.mean != H_(i, j))
                throw std::invalid_argument("kernel mean disagrees with H at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

UncertainDesign UncertainDesign::rounding(MatrixXd H, double delta, double sigma) {
    std::vector<ElementKernel> ks;
    ks.reserve(static_cast<std::size_t>(H.size()));
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        for (Eigen::Index j = 0; j < H.cols(); ++j)
            ks.push_back(ElementKernel::uniform(H(i, j), delta));
    return UncertainDesign(std::move(H), std::move(ks), AdditiveNoise(sigma));
}

UncertainDesign UncertainDesign::floating_point(MatrixXd H, MatrixXd D, double sigma) {
    if (D.rows() != H.rows() || D.cols() != H.cols())
        throw std::invalid_argument("half-width matrix does not match design dimensions");
    std::vector<ElementKernel> ks;
    ks.reserve(static_cast<std::size_t>(H.size()));
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        for (Eigen::Index j = 0; j < H.cols(); ++j)
            ks.push_back(ElementKernel::floating(H(i, j), D(i, j)));
    return UncertainDesign(std::move(H), std::move(ks), AdditiveNoise(sigma));
}

UncertainDesign UncertainDesign::floating_point_digits(MatrixXd H, int digits, double sigma) {
    if (digits < 1) throw std::invalid_argument("digits must be >= 1");
    MatrixXd D(H.rows(), H.cols());
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        for (Eigen::Index j = 0; j < H.cols(); ++j) D(i, j) = half_ulp_decimal(H(i, j), digits);
    return floating_point(std::move(H), std::move(D), sigma);
}

UncertainDesign UncertainDesign::clipping(MatrixXd H, double rate, double gamma, double sigma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("clipping threshold must be positive");
    std::vector<ElementKernel> ks;
    ks.reserve(static_cast<std::size_t>(H.size()));
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        for (Eigen::Index j = 0; j < H.cols(); ++j) {
            const double h = H(i, j);
            if (std::fabs(h) > gamma)
                throw std::invalid_argument("|H_ij| exceeds the clipping threshold at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            const bool clipped = std::fabs(h) == gamma;
            const int sign = h < 0.0 ? -1 : 1;
            ks.push_back(ElementKernel::clipped_exp(h, rate, clipped, sign));
        }
    return UncertainDesign(std::move(H), std::move(ks), AdditiveNoise(sigma));
}

UncertainDesign UncertainDesign::gaussian(MatrixXd H, double rho, double sigma) {
    std::vector<ElementKernel> ks;
    ks.reserve(static_cast<std::size_t>(H.size()));
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        for (Eigen::Index j = 0; j < H.cols(); ++j)
            ks.push_back(ElementKernel::gaussian(H(i, j), rho));
    return UncertainDesign(std::move(H), std::move(ks), AdditiveNoise(sigma));
}

double half_ulp_decimal(double h, int digits) {
    if (h == 0.0) return 0.0;
    const double e = std::floor(std::log10(std::fabs(h)));
    return 0.5 * std::pow(10.0, e - (digits - 1));
}

}  // namespace aml
