#include "chebdim/chebyshev.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chebdim/parallel.hpp"

namespace chebdim {

namespace {

// Canonical points cos(j*pi/n), j = 0..n, built from one half and mirrored so
// the set is exactly symmetric and the endpoints are exactly +1 and -1.
Eigen::VectorXd canonical_points(int count) {
    const int n = count - 1;
    Eigen::VectorXd pts(count);
    for (int j = 0; 2 * j <= n; ++j) {
        const double c = std::cos(static_cast<double>(j) * std::numbers::pi / n);
        pts[j] = c;
        pts[n - j] = -c;
    }
    if (n % 2 == 0) pts[n / 2] = 0.0;
    pts[0] = 1.0;
    pts[n] = -1.0;
    return pts;
}

std::string node_to_string(const Eigen::VectorXd& x) {
    std::string out = "(";
    char buf[32];
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
        if (i > 0) out += ", ";
        out += buf;
    }
    return out + ")";
}

// Barycentric second-form evaluation over values accessed with a stride.
// Weights are (-1)^i, halved at both endpoints. An exact coordinate match
// short-circuits to the stored value.
double barycentric(const Eigen::VectorXd& pts, const double* vals, std::ptrdiff_t stride,
                   double x) {
    ++barycentric_call_count();
    const Eigen::Index n = pts.size() - 1;
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i) {
        const double diff = x - pts[i];
        if (diff == 0.0) return vals[i * stride];
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        if (i & 1) w = -w;
        const double q = w / diff;
        num += q * vals[i * stride];
        den += q;
    }
    return num / den;
}

void check_in_domain(const ChebyshevGrid& grid, const Eigen::VectorXd& point) {
    if (point.size() != grid.dim_count())
        throw std::invalid_argument("eval: query has " + std::to_string(point.size()) +
                                    " coordinates, tensor has " +
                                    std::to_string(grid.dim_count()) + " dimensions");
    for (int d = 0; d < grid.dim_count(); ++d) {
        const Interval& iv = grid.domain()[d];
        if (!(point[d] >= iv.lo && point[d] <= iv.hi)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "eval: coordinate %.17g outside domain [%.17g, %.17g] in dimension %d",
                          point[d], iv.lo, iv.hi, d);
            throw std::domain_error(buf);
        }
    }
}

}  // namespace

std::uint64_t& barycentric_call_count() noexcept {
    thread_local std::uint64_t count = 0;
    return count;
}

Eigen::VectorXd cheb_points(int count, const Interval& domain) {
    if (count < 2) throw std::invalid_argument("cheb_points: require count >= 2, got " +
                                               std::to_string(count));
    Eigen::VectorXd pts = canonical_points(count);
    for (int j = 0; j < count; ++j) pts[j] = domain.from_unit(pts[j]);
    return pts;
}

ChebyshevGrid::ChebyshevGrid(HyperRectangle domain, std::vector<int> counts)
    : domain_(std::move(domain)), counts_(std::move(counts)) {
    if (domain_.dim_count() == 0) throw std::invalid_argument("ChebyshevGrid: empty domain");
    if (counts_.size() != static_cast<std::size_t>(domain_.dim_count()))
        throw std::invalid_argument("ChebyshevGrid: " + std::to_string(counts_.size()) +
                                    " counts for " + std::to_string(domain_.dim_count()) +
                                    " dimensions");
    size_ = 1;
    points_.reserve(counts_.size());
    for (int d = 0; d < domain_.dim_count(); ++d) {
        const int m = counts_[static_cast<std::size_t>(d)];
        points_.push_back(cheb_points(m, domain_[d]));
        const Eigen::VectorXd& p = points_.back();
        for (int j = 1; j < m; ++j)
            if (!(p[j] < p[j - 1]))
                throw std::invalid_argument(
                    "ChebyshevGrid: points not strictly monotone in dimension " +
                    std::to_string(d) + " (domain too narrow for " + std::to_string(m) +
                    " points)");
        size_ *= static_cast<std::size_t>(m);
    }
}

Eigen::VectorXd ChebyshevGrid::node(std::size_t flat) const {
    if (flat >= size_) throw std::out_of_range("ChebyshevGrid::node: index out of range");
    const int d = dim_count();
    Eigen::VectorXd x(d);
    for (int k = d - 1; k >= 0; --k) {
        const std::size_t m = static_cast<std::size_t>(counts_[static_cast<std::size_t>(k)]);
        x[k] = points_[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(flat % m)];
        flat /= m;
    }
    return x;
}

ChebyshevTensor::ChebyshevTensor(ChebyshevGrid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != grid_.size())
        throw std::invalid_argument("ChebyshevTensor: " + std::to_string(values_.size()) +
                                    " values for a grid of " + std::to_string(grid_.size()) +
                                    " nodes");
    if (!values_.allFinite())
        throw std::invalid_argument("ChebyshevTensor: values contain a non-finite entry");
}

ChebyshevTensor build_tensor(const std::function<double(const Eigen::VectorXd&)>& f,
                             const ChebyshevGrid& grid, unsigned threads) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(grid.size()));
    std::atomic<bool> bad{false};
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        values[static_cast<Eigen::Index>(i)] = f(grid.node(i));
        if (!std::isfinite(values[static_cast<Eigen::Index>(i)])) bad.store(true);
    });
    if (bad.load()) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (!std::isfinite(values[static_cast<Eigen::Index>(i)]))
                throw std::runtime_error("build_tensor: non-finite sample at node " +
                                         node_to_string(grid.node(i)));
    }
    return ChebyshevTensor(grid, std::move(values));
}

ChebyshevTensor build_tensor_1d(const std::function<double(double)>& f, int count,
                                const Interval& domain) {
    ChebyshevGrid grid(HyperRectangle{domain}, {count});
    return build_tensor([&](const Eigen::VectorXd& x) { return f(x[0]); }, grid);
}

double eval_1d(const ChebyshevTensor& tensor, double x) {
    if (tensor.dim_count() != 1)
        throw std::invalid_argument("eval_1d: tensor has " +
                                    std::to_string(tensor.dim_count()) + " dimensions");
    Eigen::VectorXd point(1);
    point[0] = x;
    check_in_domain(tensor.grid(), point);
    return barycentric(tensor.grid().points(0), tensor.values().data(), 1, x);
}

double eval_nd(const ChebyshevTensor& tensor, const Eigen::VectorXd& point) {
    const ChebyshevGrid& grid = tensor.grid();
    check_in_domain(grid, point);
    const int d = grid.dim_count();
    std::size_t block = grid.size();
    const double* src = tensor.values().data();
    std::vector<double> buf;
    for (int k = 0; k < d; ++k) {
        const std::size_t m = static_cast<std::size_t>(grid.counts()[static_cast<std::size_t>(k)]);
        block /= m;
        std::vector<double> next(block);
        for (std::size_t r = 0; r < block; ++r)
            next[r] = barycentric(grid.points(k), src + r, static_cast<std::ptrdiff_t>(block),
                                  point[k]);
        buf = std::move(next);
        src = buf.data();
    }
    return buf[0];
}

}  // namespace chebdim
