#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace aml {

/// Shortest-roundtrip decimal formatting ("%.17g" fallback) used for all
/// numeric output so repeated runs are byte identical.
std::string format_double(double v);

/// Read a rectangular numeric CSV.  A leading header row (any non-numeric
/// first line) is skipped; rows must have equal arity.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Single-column (or single-row) numeric CSV.
Eigen::VectorXd read_vector_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& M,
                      const std::string& col_prefix = "c");
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& name = "value");

}  // namespace aml
