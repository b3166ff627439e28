#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace chebdim {

/// Per-factor sensitivities at every (path, time) node. Row index is
/// path * time_count + time_index, one column per market factor.
struct SensitivityMatrix {
    Eigen::MatrixXd values;
    std::string method;
    std::uint64_t pricer_calls = 0;
};

/// Initial margin at every node, paths down the rows, time points across the
/// columns. Margins are nonnegative.
struct DimSurface {
    Eigen::MatrixXd im;
    std::string method;
};

/// Per-time-point expected IM and 95th percentile IM across paths.
struct DimProfile {
    Eigen::VectorXd eim;
    Eigen::VectorXd q95;
    std::string method;
};

/// Linear-interpolated order statistic: position q * (n - 1) between sorted
/// neighbours.
double percentile(Eigen::VectorXd values, double q);

/// Reduces a surface to its profiles with fixed-order reductions across
/// paths.
DimProfile profiles(const DimSurface& surface);

struct ProfileErrorStats {
    double error = 0.0;
    int skipped = 0;
};

/// Mean over time of |benchmark - alternative| / benchmark, skipping points
/// where the benchmark is below 1e-12 times its own maximum. Throws when
/// every point is skipped (the metric is undefined there).
ProfileErrorStats profile_error(const Eigen::VectorXd& benchmark,
                                const Eigen::VectorXd& alternative);

}  // namespace chebdim
