#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "chebdim/chebyshev.hpp"

namespace chebdim {

/// Outcome of a convergence study: sup-norm interpolation error per tried
/// point count, plus the rate fitted to error ~ C * rate^(-count).
struct ConvergenceReport {
    std::vector<int> counts_tried;
    std::vector<double> max_abs_errors;

    /// exp(-slope) of the least-squares line through (count, log error),
    /// restricted to strictly positive errors. Geometric convergence shows a
    /// rate well above 1, algebraic convergence a rate near 1. If fewer than
    /// two errors are positive the rate is +infinity.
    double fitted_decay_rate = 0.0;
};

/// Builds an interpolant of f for each count (same count in every dimension),
/// measures the max absolute error against f over a deterministic equispaced
/// probe grid of at least probe_count points, and fits the decay rate.
ConvergenceReport convergence_study(const std::function<double(const Eigen::VectorXd&)>& f,
                                    const HyperRectangle& domain, const std::vector<int>& counts,
                                    int probe_count);

}  // namespace chebdim
