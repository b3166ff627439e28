#include "chebdim/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chebdim {

namespace {

// Equispaced probe coordinates per dimension, endpoints included, sized so the
// full product grid holds at least probe_count points.
std::vector<Eigen::VectorXd> probe_axes(const HyperRectangle& domain, int probe_count) {
    const int d = domain.dim_count();
    int per_dim = probe_count;
    if (d > 1) {
        per_dim = static_cast<int>(std::ceil(std::pow(static_cast<double>(probe_count), 1.0 / d)));
        per_dim = std::max(per_dim, 2);
    }
    std::vector<Eigen::VectorXd> axes;
    axes.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        Eigen::VectorXd axis(per_dim);
        const Interval& iv = domain[k];
        for (int i = 0; i < per_dim; ++i)
            axis[i] = iv.lo + iv.width() * static_cast<double>(i) / (per_dim - 1);
        axis[0] = iv.lo;
        axis[per_dim - 1] = iv.hi;
        axes.push_back(std::move(axis));
    }
    return axes;
}

}  // namespace

ConvergenceReport convergence_study(const std::function<double(const Eigen::VectorXd&)>& f,
                                    const HyperRectangle& domain, const std::vector<int>& counts,
                                    int probe_count) {
    if (counts.empty()) throw std::invalid_argument("convergence_study: empty count list");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 2)
            throw std::invalid_argument("convergence_study: counts must be >= 2");
        if (i > 0 && counts[i] <= counts[i - 1])
            throw std::invalid_argument("convergence_study: counts must be strictly increasing");
    }
    if (probe_count < 100)
        throw std::invalid_argument("convergence_study: require probe_count >= 100, got " +
                                    std::to_string(probe_count));

    const int d = domain.dim_count();
    const std::vector<Eigen::VectorXd> axes = probe_axes(domain, probe_count);
    std::size_t total_probes = 1;
    for (const auto& axis : axes) total_probes *= static_cast<std::size_t>(axis.size());

    ConvergenceReport report;
    report.counts_tried = counts;
    report.max_abs_errors.reserve(counts.size());

    for (int count : counts) {
        ChebyshevGrid grid(domain, std::vector<int>(static_cast<std::size_t>(d), count));
        ChebyshevTensor tensor = build_tensor(f, grid);
        double worst = 0.0;
        Eigen::VectorXd x(d);
        for (std::size_t flat = 0; flat < total_probes; ++flat) {
            std::size_t rem = flat;
            for (int k = d - 1; k >= 0; --k) {
                const auto& axis = axes[static_cast<std::size_t>(k)];
                x[k] = axis[static_cast<Eigen::Index>(rem % static_cast<std::size_t>(axis.size()))];
                rem /= static_cast<std::size_t>(axis.size());
            }
            worst = std::max(worst, std::abs(eval_nd(tensor, x) - f(x)));
        }
        report.max_abs_errors.push_back(worst);
    }

    // Least-squares line through (count, log error) over positive errors.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double err = report.max_abs_errors[i];
        if (!(err > 0.0)) continue;
        const double cx = counts[i];
        const double cy = std::log(err);
        sx += cx;
        sy += cy;
        sxx += cx * cx;
        sxy += cx * cy;
        ++used;
    }
    if (used < 2) {
        report.fitted_decay_rate = std::numeric_limits<double>::infinity();
    } else {
        const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
        report.fitted_decay_rate = std::exp(-slope);
    }
    return report;
}

}  // namespace chebdim
