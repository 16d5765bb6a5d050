#include "aml/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aml/errors.hpp"

namespace aml {

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // Trim surrounding whitespace.
        const auto b = tok.find_first_not_of(" \t\r");
        if (b == std::string::npos) return false;
        const auto e = tok.find_last_not_of(" \t\r");
        tok = tok.substr(b, e - b + 1);
        std::size_t used = 0;
        try {
            out.push_back(std::stod(tok, &used));
        } catch (const std::exception&) {
            return false;
        }
        if (used != tok.size()) return false;
    }
    return !out.empty();
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        if (!parse_row(line, row)) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw ConfigError(path + ":" + std::to_string(lineno) + ": unparsable row");
        }
        first = false;
        if (!rows.empty() && rows.front().size() != row.size())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError(path + ": no numeric rows");
    return rows;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto rows = read_rows(path);
    Eigen::MatrixXd M(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return M;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
    Eigen::MatrixXd M = read_matrix_csv(path);
    if (M.cols() == 1) return M.col(0);
    if (M.rows() == 1) return M.row(0).transpose();
    throw ConfigError(path + ": expected a single column or row");
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& M,
                      const std::string& col_prefix) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        out << (j ? "," : "") << col_prefix << j;
    out << '\n';
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            out << (j ? "," : "") << format_double(M(i, j));
        out << '\n';
    }
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& name) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << name << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

}  // namespace aml
