#pragma once

#include <vector>

#include "chebdim/rfem.hpp"

namespace chebdim {

/// One market factor at one time point across all simulated paths, sorted by
/// value with stable path order on ties, keeping back-references into the
/// cube.
struct MarketSpaceSlice {
    const ScenarioCube* cube = nullptr;
    int factor_index = 0;
    int time_index = 0;
    std::vector<double> sorted_values;
    std::vector<int> sorted_paths;

    double lo() const { return sorted_values.front(); }
    double hi() const { return sorted_values.back(); }
    bool degenerate() const { return lo() == hi(); }
};

MarketSpaceSlice make_slice(const ScenarioCube& cube, int factor_index, int time_index);

/// Market state consistent with factor_index taking the value s: the other
/// factors are interpolated linearly between the nearest simulated neighbours
/// (greatest value <= s and smallest value >= s). When s coincides with a
/// simulated value the earliest such path's state is returned with the factor
/// set to s. s must lie within the simulated range.
MarketState market_from_slice(const MarketSpaceSlice& slice, double s);

}  // namespace chebdim
