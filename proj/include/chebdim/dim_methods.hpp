#pragma once

#include <cstdint>
#include <vector>

#include "chebdim/dim_profile.hpp"
#include "chebdim/pricing.hpp"
#include "chebdim/rfem.hpp"
#include "chebdim/simm.hpp"
#include "chebdim/trades.hpp"

namespace chebdim {

namespace method_name {
inline constexpr const char* brute_force = "brute_force";
inline constexpr const char* model_space = "cheb_model_space";
inline constexpr const char* market_space = "cheb_market_space";
inline constexpr const char* regression_poly = "regression_poly";
inline constexpr const char* regression_nw = "regression_nw";
}  // namespace method_name

struct DimResult {
    SensitivityMatrix sens;
    DimSurface surface;
};

/// Benchmark: finite-difference sensitivities and margin at every node.
/// Exactly 2 * factors * paths * time_points pricer calls.
DimResult brute_force_dim(const ScenarioCube& cube, const Trade& trade, const BumpConfig& bumps,
                          const SimmConfig& simm, unsigned threads = 1);

/// Chebyshev interpolation over the model factors: per time point, tensors of
/// the sensitivity-of-mapped-state function are built on the hyper-rectangle
/// spanned by the simulated factors (mesh points per dimension) and evaluated
/// at every path. A dimension whose simulated range collapses to a point is
/// frozen there and the tensor is constant along it. Pricer calls per fully
/// non-degenerate time point: factors * prod(mesh) * 2.
DimResult model_space_dim(const ScenarioCube& cube, const Trade& trade,
                          const std::vector<int>& mesh, const BumpConfig& bumps,
                          const SimmConfig& simm, unsigned threads = 1);

/// Chebyshev interpolation over each market factor separately: per time point
/// and factor, a 1-D tensor of the sensitivity along the neighbour-
/// interpolated market states is built over the simulated range and evaluated
/// at each path's own value. Pricer calls per non-degenerate time point:
/// factors * mesh * 2.
DimResult market_space_dim(const ScenarioCube& cube, const Trade& trade, int mesh,
                           const BumpConfig& bumps, const SimmConfig& simm, unsigned threads = 1);

enum class RegressionKind { polynomial, nadaraya_watson };

struct RegressionResult {
    DimSurface surface;
    std::uint64_t pricer_calls = 0;
    int fallback_count = 0;  // time points where the fit degenerated to the unconditional variance
};

/// Regression baseline: per node, the trade is priced at t and at
/// t + horizon along an auxiliary deterministic sub-step of the same path
/// (2 * paths * time_points pricer calls in total); per time point the PnL
/// samples are centred by a fitted conditional mean and their squared
/// residuals regressed on the model factors to estimate a conditional
/// variance; IM is quantile_z * sqrt of it. A singular design falls back to
/// the unconditional variance.
RegressionResult regression_dim(const ScenarioCube& cube, const Trade& trade, RegressionKind kind,
                                double horizon_years, double quantile_z, unsigned threads = 1);

}  // namespace chebdim
