#include "aml/density.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

#include "aml/scalar_root.hpp"

namespace aml {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

double normal_pdf(double x, double mu, double sd) {
    const double z = (x - mu) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(kTwoPi));
}

ElementKernel component_kernel(const Component& c) {
    switch (c.kind) {
        case Component::Kind::normal: return ElementKernel::gaussian(c.p1, c.p2);
        case Component::Kind::uniform:
            return ElementKernel::floating(0.5 * (c.p1 + c.p2), 0.5 * (c.p2 - c.p1));
        default: return ElementKernel::clipped_exp(0.0, c.p1, true, 1);
    }
}

double component_pdf(const Component& c, double x) {
    switch (c.kind) {
        case Component::Kind::normal: return normal_pdf(x, c.p1, c.p2);
        case Component::Kind::uniform:
            return (x >= c.p1 && x <= c.p2) ? 1.0 / (c.p2 - c.p1) : 0.0;
        default: return x >= 0.0 ? c.p1 * std::exp(-c.p1 * x) : 0.0;
    }
}

// Integration window carrying all but ~1e-18 of the component's mass.
std::pair<double, double> component_support(const Component& c) {
    switch (c.kind) {
        case Component::Kind::normal: return {c.p1 - 9.5 * c.p2, c.p1 + 9.5 * c.p2};
        case Component::Kind::uniform: return {c.p1, c.p2};
        default: return {0.0, 41.0 / c.p1};
    }
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) return 0.0;
    // Seed with a few panels so narrow features are not missed.
    const int panels = 8;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + p * h;
        const double pb = pa + h;
        const double pm = 0.5 * (pa + pb);
        const double fa = f(pa), fm = f(pm), fb = f(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson_rec(f, pa, pb, fa, fm, fb, whole, tol / panels, 48);
    }
    return total;
}

}  // namespace

Component Component::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal component requires sigma > 0");
    return {Kind::normal, mu, sigma};
}

Component Component::uniform(double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("uniform component requires hi > lo");
    return {Kind::uniform, lo, hi};
}

Component Component::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential component requires rate > 0");
    return {Kind::exponential, rate, 0.0};
}

double Component::mean() const {
    switch (kind) {
        case Kind::normal: return p1;
        case Kind::uniform: return 0.5 * (p1 + p2);
        default: return 1.0 / p1;
    }
}

double Component::variance() const {
    switch (kind) {
        case Kind::normal: return p2 * p2;
        case Kind::uniform: {
            const double w = p2 - p1;
            return w * w / 12.0;
        }
        default: return 1.0 / (p1 * p1);
    }
}

std::vector<Component> parse_components(const std::string& spec) {
    std::vector<Component> out;
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t open = s.find('(', pos);
        const std::size_t close = s.find(')', pos);
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ConfigError("malformed component list: '" + spec + "'");
        const std::string name = s.substr(pos, open - pos);
        const std::string args = s.substr(open + 1, close - open - 1);
        std::vector<double> vals;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw ConfigError("bad number '" + tok + "' in component list");
            }
            if (used != tok.size()) throw ConfigError("bad number '" + tok + "' in component list");
            vals.push_back(v);
        }
        if (name == "normal" && vals.size() == 2)
            out.push_back(Component::normal(vals[0], vals[1]));
        else if (name == "uniform" && vals.size() == 2)
            out.push_back(Component::uniform(vals[0], vals[1]));
        else if (name == "exponential" && vals.size() == 1)
            out.push_back(Component::exponential(vals[0]));
        else
            throw ConfigError("unsupported component '" + name + "(" + args + ")'");
        pos = close + 1;
        if (pos < s.size()) {
            if (s[pos] != '+') throw ConfigError("expected '+' between components");
            ++pos;
        }
    }
    if (out.empty()) throw ConfigError("empty component list");
    return out;
}

ComponentSum::ComponentSum(std::vector<Component> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("component sum needs at least one part");
    kernels_.reserve(parts_.size());
    for (const Component& c : parts_) kernels_.push_back(component_kernel(c));
}

double ComponentSum::eval(double t, int order) const {
    double acc = 0.0;
    for (const ElementKernel& k : kernels_) acc += kernel_eval(k, t, order);
    return acc;
}

Interval ComponentSum::t_domain() const {
    Interval d;
    for (const ElementKernel& k : kernels_) {
        const Interval kd = kernel_domain(k);
        d.lo = std::fmax(d.lo, kd.lo);
        d.hi = std::fmin(d.hi, kd.hi);
    }
    return d;
}

double ComponentSum::mean() const {
    double acc = 0.0;
    for (const Component& c : parts_) acc += c.mean();
    return acc;
}

double ComponentSum::variance() const {
    double acc = 0.0;
    for (const Component& c : parts_) acc += c.variance();
    return acc;
}

SaddlePoint saddle_point(const ComponentSum& cgf, double alpha, double tol) {
    const Interval dom = cgf.t_domain();
    const double abs_tol = tol * (1.0 + std::fabs(alpha));
    const auto f = [&](double t) { return cgf.eval(t, 1) - alpha; };
    const auto fp = [&](double t) { return cgf.eval(t, 2); };
    const detail::RootResult r = detail::solve_increasing(f, fp, dom.lo, dom.hi, 0.0, abs_tol);
    return {r.t, cgf.eval(r.t, 2)};
}

double saddle_density(const ComponentSum& cgf, double alpha) {
    const SaddlePoint sp = saddle_point(cgf, alpha);
    const double expo = cgf.eval(sp.t0, 0) - sp.t0 * alpha - 0.5 * std::log(kTwoPi * sp.k2);
    return std::exp(expo);
}

double gaussian_fit_density(const ComponentSum& cgf, double alpha) {
    return normal_pdf(alpha, cgf.mean(), std::sqrt(cgf.variance()));
}

double convolution_oracle_pdf(const std::vector<Component>& parts, double alpha) {
    double mu_g = 0.0, var_g = 0.0;
    std::vector<Component> rest;
    for (const Component& c : parts) {
        if (c.kind == Component::Kind::normal) {
            mu_g += c.p1;
            var_g += c.p2 * c.p2;
        } else {
            rest.push_back(c);
        }
    }
    if (rest.size() > 3)
        throw TooManyComponents("convolution oracle limited to 3 non-Gaussian components, got " +
                                std::to_string(rest.size()));
    if (rest.empty()) {
        if (var_g == 0.0) throw std::invalid_argument("degenerate component sum");
        return normal_pdf(alpha, mu_g, std::sqrt(var_g));
    }

    // Innermost factor: pooled Gaussian density if present, otherwise the
    // last component's own density evaluated at the remainder.
    const bool has_gauss = var_g > 0.0;
    const double sd_g = std::sqrt(var_g);
    const std::size_t quad_count = rest.size() - (has_gauss ? 0 : 1);
    const Component& last = rest.back();

    std::function<double(std::size_t, double)> level = [&](std::size_t idx,
                                                           double remainder) -> double {
        if (idx == quad_count)
            return has_gauss ? normal_pdf(remainder, mu_g, sd_g) : component_pdf(last, remainder);
        const auto [lo, hi] = component_support(rest[idx]);
        const double tol = 1e-9 * std::pow(10.0, -static_cast<double>(idx));
        return adaptive_simpson(
            [&](double s) { return component_pdf(rest[idx], s) * level(idx + 1, remainder - s); },
            lo, hi, tol);
    };
    return level(0, alpha);
}

}  // namespace aml
