#pragma once

#include <Eigen/Dense>
#include <filesystem>

namespace parqq {

/// Header: "PQQM", u32 rows, u32 cols, 4 reserved zero bytes; then row-major little-endian f64.
void write_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_binary(const std::filesystem::path& path);

/// One row per line, %.12g entries.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace parqq
