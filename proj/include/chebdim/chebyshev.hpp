#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "chebdim/interval.hpp"

namespace chebdim {

/// Chebyshev points of a given interval, ordered from hi down to lo.
///
/// Canonically these are cos(j*pi/n) for j = 0..n with n = count - 1; the
/// descending canonical order is kept after the affine map onto the interval.
/// The set is symmetric about the interval midpoint and includes both
/// endpoints exactly.
Eigen::VectorXd cheb_points(int count, const Interval& domain);

/// Tensor-product grid of Chebyshev points over a hyper-rectangle.
///
/// Nodes are addressed in row-major order over the dimensions in declared
/// order (the last dimension varies fastest).
class ChebyshevGrid {
  public:
    ChebyshevGrid(HyperRectangle domain, std::vector<int> counts);

    int dim_count() const { return domain_.dim_count(); }
    const HyperRectangle& domain() const { return domain_; }
    const std::vector<int>& counts() const { return counts_; }
    const Eigen::VectorXd& points(int dim) const { return points_.at(static_cast<std::size_t>(dim)); }

    /// Total node count, the product of the per-dimension counts.
    std::size_t size() const { return size_; }

    /// Coordinates of the node with the given row-major flat index.
    Eigen::VectorXd node(std::size_t flat) const;

  private:
    HyperRectangle domain_;
    std::vector<int> counts_;
    std::vector<Eigen::VectorXd> points_;
    std::size_t size_;
};

/// Immutable Chebyshev interpolant: a grid plus the sampled values at its
/// nodes, stored row-major. All values are finite.
class ChebyshevTensor {
  public:
    ChebyshevTensor(ChebyshevGrid grid, Eigen::VectorXd values);

    const ChebyshevGrid& grid() const { return grid_; }
    const Eigen::VectorXd& values() const { return values_; }
    int dim_count() const { return grid_.dim_count(); }

  private:
    ChebyshevGrid grid_;
    Eigen::VectorXd values_;
};

/// Samples f at every grid node (exactly grid.size() evaluations, row-major
/// order of node indices) and wraps the result. With threads > 1 the nodes
/// are sampled concurrently; f must be pure and the result is independent of
/// the sampling order. Throws if f produces a non-finite value, naming the
/// offending node.
ChebyshevTensor build_tensor(const std::function<double(const Eigen::VectorXd&)>& f,
                             const ChebyshevGrid& grid, unsigned threads = 1);

/// One-dimensional convenience overload.
ChebyshevTensor build_tensor_1d(const std::function<double(double)>& f, int count,
                                const Interval& domain);

/// Evaluates a 1-D interpolant by the barycentric formula. Queries must lie
/// inside the domain (inclusive); a query that coincides exactly with a grid
/// point returns the stored value without division.
double eval_1d(const ChebyshevTensor& tensor, double x);

/// Evaluates an N-D interpolant by dimension reduction: collapse the first
/// dimension at the query coordinate for every combination of remaining node
/// indices, then recurse. For per-dimension count m and d dimensions this
/// costs m^(d-1) + m^(d-2) + ... + 1 barycentric evaluations.
double eval_nd(const ChebyshevTensor& tensor, const Eigen::VectorXd& point);

/// Thread-local count of barycentric evaluations, for cost accounting and
/// tests. Callers may reset it by assignment.
std::uint64_t& barycentric_call_count() noexcept;

}  // namespace chebdim
