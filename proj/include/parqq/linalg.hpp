#pragma once

#include <Eigen/Dense>
#include <vector>

namespace parqq {

/// Matrices with at most this many entries get a dense singular value decomposition.
inline constexpr double kDenseNormEntries = 4000.0 * 4000.0;

/// Operator 2-norm. Dense SVD at desk scale, power iteration on A^T A above it.
double spectral_norm(const Eigen::MatrixXd& a);

/// Largest singular value by power iteration on A^T A from a fixed start vector.
double spectral_norm_power(const Eigen::MatrixXd& a, double tolerance = 1e-9, int max_iterations = 100000);

/// Eigenvalues of a symmetric matrix, descending.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Kronecker product a (x) b; the row index of a is the more significant digit.
Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Least-squares slope and intercept of y against x, with the slope's standard error.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of log(y) against log(x).
LinearFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace parqq
