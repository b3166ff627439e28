#include "chebdim/dim_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace chebdim {

double percentile(Eigen::VectorXd values, double q) {
    if (values.size() == 0) throw std::invalid_argument("percentile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q must be in [0, 1]");
    std::sort(values.data(), values.data() + values.size());
    const double pos = q * static_cast<double>(values.size() - 1);
    const Eigen::Index lo = static_cast<Eigen::Index>(std::floor(pos));
    if (lo + 1 >= values.size()) return values[values.size() - 1];
    const double w = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - w) + values[lo + 1] * w;
}

DimProfile profiles(const DimSurface& surface) {
    const Eigen::Index T = surface.im.cols();
    const Eigen::Index paths = surface.im.rows();
    if (T == 0 || paths == 0) throw std::invalid_argument("profiles: empty surface");
    DimProfile out;
    out.method = surface.method;
    out.eim.resize(T);
    out.q95.resize(T);
    for (Eigen::Index ti = 0; ti < T; ++ti) {
        double sum = 0.0;
        for (Eigen::Index p = 0; p < paths; ++p) sum += surface.im(p, ti);
        out.eim[ti] = sum / static_cast<double>(paths);
        out.q95[ti] = percentile(surface.im.col(ti), 0.95);
    }
    return out;
}

ProfileErrorStats profile_error(const Eigen::VectorXd& benchmark,
                                const Eigen::VectorXd& alternative) {
    if (benchmark.size() != alternative.size())
        throw std::invalid_argument("profile_error: profiles have different lengths");
    if (benchmark.size() == 0) throw std::invalid_argument("profile_error: empty profiles");
    const double eps = 1e-12 * benchmark.maxCoeff();
    double sum = 0.0;
    int used = 0;
    ProfileErrorStats out;
    for (Eigen::Index i = 0; i < benchmark.size(); ++i) {
        if (benchmark[i] <= eps) {
            ++out.skipped;
            continue;
        }
        sum += std::abs(benchmark[i] - alternative[i]) / benchmark[i];
        ++used;
    }
    if (used == 0)
        throw std::runtime_error(
            "profile_error: benchmark is negligible at every time point; the relative metric is "
            "undefined");
    out.error = sum / static_cast<double>(used);
    return out;
}

}  // namespace chebdim
