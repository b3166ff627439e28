#pragma once

#include <Eigen/Dense>

namespace chebdim {

/// Full degree-2 polynomial basis in the columns of X: intercept, linear
/// terms, squares and cross terms. One row per sample.
Eigen::MatrixXd quadratic_basis(const Eigen::MatrixXd& X);

/// Least-squares fit of y on the basis columns. ok is false when the design
/// is rank deficient, in which case no coefficients are returned.
struct LeastSquaresFit {
    bool ok = false;
    Eigen::VectorXd coeffs;
};
LeastSquaresFit fit_least_squares(const Eigen::MatrixXd& basis, const Eigen::VectorXd& y);

/// Per-column Silverman bandwidths: sd * (4 / ((d + 2) n))^(1 / (d + 4)).
/// Columns with zero spread get bandwidth 0 and are ignored by nw_smooth.
Eigen::VectorXd silverman_bandwidths(const Eigen::MatrixXd& X);

/// Nadaraya-Watson estimate with a Gaussian product kernel: at each query
/// row, the kernel-weighted average of y over the sample rows of X. Columns
/// with nonpositive bandwidth do not contribute to the distance; if every
/// column is inert the estimate degenerates to the sample mean of y.
Eigen::VectorXd nw_smooth(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& queries, const Eigen::VectorXd& bandwidths);

}  // namespace chebdim
