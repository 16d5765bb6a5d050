#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aml {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Minimal line chart (optionally log-log), one polyline per series.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series, bool logx, bool logy);

/// Histogram with an optional vertical reference line.
void write_histogram(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::vector<double>& values, int bins,
                     std::optional<double> marker);

}  // namespace aml
