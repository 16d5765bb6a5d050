#include "aml/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "aml/errors.hpp"

namespace aml {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double frac(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return (x - a) / (b - a);
    }
};

std::string fmt_tick(double v) {
    std::ostringstream ss;
    if (v != 0.0 && (std::fabs(v) >= 1e4 || std::fabs(v) < 1e-3))
        ss << std::scientific;
    ss.precision(3);
    ss << v;
    return ss.str();
}

std::vector<double> ticks_for(const Axis& ax) {
    std::vector<double> t;
    if (ax.log) {
        const int e0 = static_cast<int>(std::floor(std::log10(ax.lo)));
        const int e1 = static_cast<int>(std::ceil(std::log10(ax.hi)));
        for (int e = e0; e <= e1; ++e) {
            const double v = std::pow(10.0, e);
            if (v >= ax.lo * 0.999 && v <= ax.hi * 1.001) t.push_back(v);
        }
        if (t.size() < 2) t = {ax.lo, ax.hi};
        return t;
    }
    const double span = ax.hi - ax.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double s : {1.0, 2.0, 5.0, 10.0})
        if (raw <= s * mag) {
            step = s * mag;
            break;
        }
    const double start = std::ceil(ax.lo / step) * step;
    for (double v = start; v <= ax.hi + 1e-9 * span; v += step) t.push_back(v);
    return t;
}

void open_svg(std::ofstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
}

double px(const Axis& ax, double v) { return kLeft + ax.frac(v) * (kWidth - kLeft - kRight); }
double py(const Axis& ax, double v) {
    return kHeight - kBottom - ax.frac(v) * (kHeight - kTop - kBottom);
}

void draw_frame(std::ofstream& out, const Axis& xax, const Axis& yax, const std::string& xlabel,
                const std::string& ylabel) {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (double v : ticks_for(xax)) {
        const double x = px(xax, v);
        out << "<line x1=\"" << x << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << x
            << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"#333\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }
    for (double v : ticks_for(yax)) {
        const double y = py(yax, v);
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft
            << "\" y2=\"" << y << "\" stroke=\"#333\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
        << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << (kTop + kHeight - kBottom) / 2 << ")\">" << ylabel
        << "</text>\n";
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series, bool logx, bool logy) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");

    Axis xax, yax;
    xax.log = logx;
    yax.log = logy;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const Series& s : series)
        for (const auto& [x, y] : s.points) {
            if (logx && !(x > 0.0)) continue;
            if (logy && !(y > 0.0)) continue;
            xlo = std::fmin(xlo, x);
            xhi = std::fmax(xhi, x);
            ylo = std::fmin(ylo, y);
            yhi = std::fmax(yhi, y);
        }
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + (logy ? ylo : 1.0);
    xax.lo = xlo;
    xax.hi = xhi;
    yax.lo = ylo;
    yax.hi = yhi;

    open_svg(out, title);
    draw_frame(out, xax, yax, xlabel, ylabel);
    int ci = 0;
    for (const Series& s : series) {
        const char* color = kColors[ci % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) out << px(xax, x) << ',' << py(yax, y) << ' ';
        out << "\"/>\n";
        const int ly = kTop + 16 + 16 * ci;
        out << "<line x1=\"" << kWidth - 150 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - 130
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kWidth - 125 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void write_histogram(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::vector<double>& values, int bins,
                     std::optional<double> marker) {
    if (values.empty()) throw EmptyGroup("histogram of an empty set");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");

    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (marker) {
        lo = std::fmin(lo, *marker);
        hi = std::fmax(hi, *marker);
    }
    if (!(hi > lo)) hi = lo + 1.0;
    const double w = (hi - lo) / bins;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto b = static_cast<long>((v - lo) / w);
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        ++counts[static_cast<std::size_t>(b)];
    }
    Axis xax{lo, hi, false};
    Axis yax{0.0, static_cast<double>(*std::max_element(counts.begin(), counts.end())), false};

    open_svg(out, title);
    draw_frame(out, xax, yax, xlabel, "count");
    for (int b = 0; b < bins; ++b) {
        const double x0 = px(xax, lo + b * w);
        const double x1 = px(xax, lo + (b + 1) * w);
        const double y = py(yax, counts[static_cast<std::size_t>(b)]);
        out << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << x1 - x0
            << "\" height=\"" << (kHeight - kBottom) - y
            << "\" fill=\"#1f77b4\" fill-opacity=\"0.7\" stroke=\"#333\"/>\n";
    }
    if (marker) {
        const double x = px(xax, *marker);
        out << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\""
            << kHeight - kBottom << "\" stroke=\"#d62728\" stroke-width=\"1.5\" "
            << "stroke-dasharray=\"5,3\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace aml
