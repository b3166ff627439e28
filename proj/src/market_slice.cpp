#include "chebdim/market_slice.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace chebdim {

MarketSpaceSlice make_slice(const ScenarioCube& cube, int factor_index, int time_index) {
    if (cube.paths <= 0) throw std::invalid_argument("make_slice: empty cube");
    if (time_index < 0 || time_index >= cube.time_count())
        throw std::invalid_argument("make_slice: time index out of range");
    const int factors = cube.pillars.factor_count();
    if (factor_index < 0 || factor_index >= factors)
        throw std::invalid_argument("make_slice: factor index out of range");

    MarketSpaceSlice slice;
    slice.cube = &cube;
    slice.factor_index = factor_index;
    slice.time_index = time_index;
    slice.sorted_paths.resize(static_cast<std::size_t>(cube.paths));
    std::iota(slice.sorted_paths.begin(), slice.sorted_paths.end(), 0);
    std::stable_sort(slice.sorted_paths.begin(), slice.sorted_paths.end(), [&](int a, int b) {
        return cube.market_at(a, time_index).factor(factor_index) <
               cube.market_at(b, time_index).factor(factor_index);
    });
    slice.sorted_values.reserve(slice.sorted_paths.size());
    for (int p : slice.sorted_paths)
        slice.sorted_values.push_back(cube.market_at(p, time_index).factor(factor_index));
    return slice;
}

MarketState market_from_slice(const MarketSpaceSlice& slice, double s) {
    const ScenarioCube& cube = *slice.cube;
    const std::vector<double>& vals = slice.sorted_values;
    if (!(s >= vals.front() && s <= vals.back())) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "market_from_slice: value %.17g outside simulated range [%.17g, %.17g]", s,
                      vals.front(), vals.back());
        throw std::domain_error(buf);
    }

    // First sorted position with value >= s; its value equals s exactly when
    // s hits a simulated value (ties resolve to the earliest path).
    const std::size_t up =
        static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), s) - vals.begin());
    if (vals[up] == s) {
        MarketState out = cube.market_at(slice.sorted_paths[up], slice.time_index);
        out.set_factor(slice.factor_index, s);
        return out;
    }

    const std::size_t down = up - 1;  // up > 0 here: s > vals.front()
    const double a1 = vals[down];
    const double a2 = vals[up];
    const double w = (s - a1) / (a2 - a1);
    const MarketState& m1 = cube.market_at(slice.sorted_paths[down], slice.time_index);
    const MarketState& m2 = cube.market_at(slice.sorted_paths[up], slice.time_index);
    MarketState out = m1;
    for (int f = 0; f < out.factor_count(); ++f)
        out.set_factor(f, m1.factor(f) + w * (m2.factor(f) - m1.factor(f)));
    out.set_factor(slice.factor_index, s);
    return out;
}

}  // namespace chebdim
