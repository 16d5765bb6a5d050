#include <doctest.h>

#include <cmath>

#include "aml/density.hpp"
#include "oracles.hpp"

using aml::Component;
using aml::ComponentSum;
using aml::convolution_oracle_pdf;
using aml::saddle_density;

namespace {

double normal_pdf(double x, double mu, double sd) {
    const double z = (x - mu) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
}

ComponentSum uniform_sum(int n) {
    std::vector<Component> parts(static_cast<std::size_t>(n), Component::uniform(0.0, 1.0));
    return ComponentSum(std::move(parts));
}

double max_rel_err_vs_irwin_hall(int n) {
    const ComponentSum cgf = uniform_sum(n);
    const double lo = oracles::irwin_hall_quantile(n, 0.005);
    const double hi = oracles::irwin_hall_quantile(n, 0.995);
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double a = lo + (hi - lo) * k / 100.0;
        const double exact = oracles::irwin_hall_pdf(n, a);
        worst = std::fmax(worst, std::fabs(saddle_density(cgf, a) - exact) / exact);
    }
    return worst;
}

}  // namespace

TEST_CASE("saddle density is exact for gaussians") {
    const ComponentSum std_norm({Component::normal(0.0, 1.0)});
    CHECK(saddle_density(std_norm, 0.0) ==
          doctest::Approx(0.39894228040143268).epsilon(1e-12));

    const ComponentSum sum({Component::normal(-1.0, 0.7), Component::normal(2.5, 1.2)});
    const double mu = 1.5, sd = std::sqrt(0.49 + 1.44);
    for (int k = 0; k < 50; ++k) {
        const double a = mu - 4.0 * sd + 8.0 * sd * k / 49.0;
        const double exact = normal_pdf(a, mu, sd);
        CHECK(std::fabs(saddle_density(sum, a) - exact) <= 1e-12 * exact);
    }
}

TEST_CASE("saddle point at the mean is zero") {
    const ComponentSum cgf({Component::uniform(0.0, 1.0), Component::normal(0.5, 2.0)});
    const auto sp = aml::saddle_point(cgf, cgf.mean());
    CHECK(std::fabs(sp.t0) < 1e-12);
    CHECK(sp.k2 == doctest::Approx(cgf.variance()).epsilon(1e-10));
}

TEST_CASE("uniform plus normal matches the quadrature oracle") {
    const std::vector<Component> parts = {Component::uniform(0.0, 1.0),
                                          Component::normal(0.0, 1.0)};
    // closed form: integral_0^1 phi(0.5 - s) ds = Phi(0.5) - Phi(-0.5)
    CHECK(convolution_oracle_pdf(parts, 0.5) ==
          doctest::Approx(0.38292492254802621).epsilon(1e-8));

    const ComponentSum cgf(parts);
    for (double a : {-1.5, -0.5, 0.25, 0.5, 1.0, 2.5}) {
        const double oracle = convolution_oracle_pdf(parts, a);
        const double spa = saddle_density(cgf, a);
        CHECK(std::fabs(spa - oracle) / oracle < 0.10);
    }
}

TEST_CASE("convolution oracle basics") {
    CHECK(convolution_oracle_pdf({Component::normal(0.0, 1.0)}, 0.0) ==
          doctest::Approx(0.39894228040143268).epsilon(1e-12));
    CHECK(convolution_oracle_pdf({Component::uniform(-0.5, 0.5)}, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // two uniforms: triangular density on [0, 2]
    const std::vector<Component> tri = {Component::uniform(0.0, 1.0),
                                        Component::uniform(0.0, 1.0)};
    CHECK(convolution_oracle_pdf(tri, 0.5) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(convolution_oracle_pdf(tri, 1.0) == doctest::Approx(1.0).epsilon(1e-7));
    // exponential against the gaussian pool
    const std::vector<Component> em = {Component::exponential(2.0),
                                       Component::normal(0.0, 0.5)};
    const ComponentSum cgf(em);
    for (double a : {0.3, 0.8, 1.5}) {
        const double oracle = convolution_oracle_pdf(em, a);
        CHECK(std::fabs(saddle_density(cgf, a) - oracle) / oracle < 0.12);
    }
    CHECK_THROWS_AS(convolution_oracle_pdf(std::vector<Component>(4, Component::uniform(0, 1)),
                                           1.0),
                    aml::TooManyComponents);
}

TEST_CASE("irwin-hall oracle sanity") {
    // n = 2 is the triangular density
    CHECK(oracles::irwin_hall_pdf(2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(oracles::irwin_hall_pdf(2, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracles::irwin_hall_pdf(2, 1.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(oracles::irwin_hall_cdf(2, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    // mass checks for n = 20 via quadrature of the pdf
    double mass = 0.0;
    const int steps = 4000;
    for (int k = 0; k < steps; ++k) {
        const double a = 20.0 * (k + 0.5) / steps;
        mass += oracles::irwin_hall_pdf(20, a) * (20.0 / steps);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(oracles::irwin_hall_quantile(2, 0.005) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("saddle density accuracy improves with more summands") {
    const double err2 = max_rel_err_vs_irwin_hall(2);
    const double err20 = max_rel_err_vs_irwin_hall(20);
    CHECK(err20 < err2);
    // 20-term sum at its center, against the exact density
    const double exact = oracles::irwin_hall_pdf(20, 10.0);
    CHECK(std::fabs(saddle_density(uniform_sum(20), 10.0) - exact) / exact < 0.01);
}

TEST_CASE("saddle solve fails outside the support") {
    const ComponentSum cgf = uniform_sum(1);
    CHECK_THROWS_AS(saddle_density(cgf, 1.5), aml::NoConvergence);
    try {
        saddle_density(cgf, 1.5);
        FAIL("expected NoConvergence");
    } catch (const aml::NoConvergence& e) {
        // the error carries the last bracket searched
        CHECK(std::isfinite(e.bracket_lo));
        CHECK(e.bracket_lo > 0.0);
    }
}

TEST_CASE("component parsing") {
    const auto parts = aml::parse_components(" uniform(0, 1) + normal(0,1)+exponential(2)");
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].kind == Component::Kind::uniform);
    CHECK(parts[1].kind == Component::Kind::normal);
    CHECK(parts[2].kind == Component::Kind::exponential);
    CHECK(parts[2].p1 == 2.0);
    CHECK_THROWS_AS(aml::parse_components("triangle(0,1)"), aml::ConfigError);
    CHECK_THROWS_AS(aml::parse_components("normal(0,1)normal(0,1)"), aml::ConfigError);
    CHECK_THROWS_AS(aml::parse_components("normal(a,1)"), aml::ConfigError);
    CHECK_THROWS_AS(aml::parse_components(""), aml::ConfigError);
    CHECK_THROWS_AS(aml::parse_components("uniform(1,0)"), std::invalid_argument);
}

TEST_CASE("gaussian fit density matches moments") {
    const ComponentSum cgf({Component::uniform(0.0, 2.0), Component::normal(1.0, 0.5)});
    CHECK(aml::gaussian_fit_density(cgf, 2.0) ==
          doctest::Approx(normal_pdf(2.0, 2.0, std::sqrt(4.0 / 12.0 + 0.25))).epsilon(1e-13));
}
