#include "chebdim/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace chebdim {

Eigen::MatrixXd quadratic_basis(const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    const Eigen::Index terms = 1 + d + d * (d + 1) / 2;
    Eigen::MatrixXd basis(n, terms);
    basis.col(0).setOnes();
    Eigen::Index c = 1;
    for (Eigen::Index j = 0; j < d; ++j) basis.col(c++) = X.col(j);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j; k < d; ++k)
            basis.col(c++) = X.col(j).cwiseProduct(X.col(k));
    return basis;
}

LeastSquaresFit fit_least_squares(const Eigen::MatrixXd& basis, const Eigen::VectorXd& y) {
    if (basis.rows() != y.size())
        throw std::invalid_argument("fit_least_squares: row count mismatch");
    LeastSquaresFit fit;
    if (basis.rows() < basis.cols()) return fit;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    qr.setThreshold(1e-10);
    if (qr.rank() < basis.cols()) return fit;
    fit.ok = true;
    fit.coeffs = qr.solve(y);
    return fit;
}

Eigen::VectorXd silverman_bandwidths(const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n < 2) return Eigen::VectorXd::Zero(d);
    Eigen::VectorXd out(d);
    const double factor =
        std::pow(4.0 / ((static_cast<double>(d) + 2.0) * static_cast<double>(n)),
                 1.0 / (static_cast<double>(d) + 4.0));
    for (Eigen::Index j = 0; j < d; ++j) {
        const double mean = X.col(j).mean();
        const double var = (X.col(j).array() - mean).square().sum() / static_cast<double>(n - 1);
        out[j] = std::sqrt(var) * factor;
    }
    return out;
}

Eigen::VectorXd nw_smooth(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& queries, const Eigen::VectorXd& bandwidths) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (y.size() != n) throw std::invalid_argument("nw_smooth: sample size mismatch");
    if (queries.cols() != d) throw std::invalid_argument("nw_smooth: query dimension mismatch");
    if (bandwidths.size() != d) throw std::invalid_argument("nw_smooth: bandwidth size mismatch");

    Eigen::VectorXd out(queries.rows());
    const double y_mean = y.mean();
    for (Eigen::Index q = 0; q < queries.rows(); ++q) {
        double wsum = 0.0;
        double ysum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double dist2 = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) {
                if (!(bandwidths[j] > 0.0)) continue;
                const double u = (queries(q, j) - X(i, j)) / bandwidths[j];
                dist2 += u * u;
            }
            const double w = std::exp(-0.5 * dist2);
            wsum += w;
            ysum += w * y[i];
        }
        out[q] = wsum > 0.0 ? ysum / wsum : y_mean;
    }
    return out;
}

}  // namespace chebdim
