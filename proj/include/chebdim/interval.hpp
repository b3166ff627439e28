#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chebdim {

/// Closed interval [lo, hi] with strictly positive width.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi))
            throw std::invalid_argument("Interval: require lo < hi, got [" + std::to_string(lo_) +
                                        ", " + std::to_string(hi_) + "]");
    }

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }

    /// Affine image of u in [-1, 1]; u = +1 maps to hi and u = -1 to lo exactly.
    double from_unit(double u) const { return 0.5 * (lo * (1.0 - u) + hi * (1.0 + u)); }

    /// Inverse of from_unit.
    double to_unit(double x) const { return (2.0 * x - lo - hi) / (hi - lo); }
};

/// Axis-aligned product of intervals, one per dimension.
struct HyperRectangle {
    std::vector<Interval> dims;

    HyperRectangle() = default;
    HyperRectangle(std::initializer_list<Interval> list) : dims(list) {}
    explicit HyperRectangle(std::vector<Interval> list) : dims(std::move(list)) {}

    int dim_count() const { return static_cast<int>(dims.size()); }
    const Interval& operator[](int d) const { return dims.at(static_cast<std::size_t>(d)); }
};

}  // namespace chebdim
