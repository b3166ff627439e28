#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chebdim {

/// One-factor mean-reverting short-rate dynamics
/// dr = kappa * (theta - r) dt + sigma dW, simulated with the exact
/// Ornstein-Uhlenbeck transition (no discretisation bias).
struct HullWhiteParams {
    double mean_reversion = 0.0;   // kappa, > 0
    double vol = 0.0;              // sigma, >= 0 (0 gives deterministic paths)
    double initial_rate = 0.0;     // r(0)
    double long_term_level = 0.0;  // theta

    void validate() const;
};

/// Stochastic-vol layer: the vol state follows a driftless lognormal process
/// driven by vol_of_vol. beta and correlation parameterise the implied-vol
/// mapping used by the swaption pricer; the forward itself is not simulated.
struct SabrParams {
    double initial_vol = 0.0;  // alpha(0), > 0
    double vol_of_vol = 0.0;   // nu, >= 0
    double beta = 0.5;         // in [0, 1]
    double correlation = 0.0;  // in (-1, 1)

    void validate() const;
};

/// Market-state layout: par swap rate pillars (tenors in whole years) and
/// lognormal vol pillars (expiries in years).
struct PillarConfig {
    std::vector<double> swap_tenors;
    std::vector<double> vol_expiries;

    int rate_count() const { return static_cast<int>(swap_tenors.size()); }
    int vol_count() const { return static_cast<int>(vol_expiries.size()); }
    int factor_count() const { return rate_count() + vol_count(); }
    void validate() const;
};

/// Point in model space: the driving factors (short rate, optionally the vol
/// state).
struct ModelState {
    Eigen::VectorXd factors;
};

/// Point in market space: one value per configured pillar. Flat indexing puts
/// rate pillars first, vol pillars after.
struct MarketState {
    Eigen::VectorXd swap_rates;
    Eigen::VectorXd vols;

    int factor_count() const { return static_cast<int>(swap_rates.size() + vols.size()); }
    double factor(int i) const;
    void set_factor(int i, double v);
};

/// B(tau) = (1 - exp(-kappa*tau)) / kappa of the affine bond formula.
double hw_bond_b(double kappa, double tau);

/// Zero-coupon bond price P(tau) = A(tau) * exp(-B(tau) * r) under the
/// short-rate dynamics with constant parameters.
double hw_bond_price(const HullWhiteParams& hw, double r, double tau);

/// Maps a model state to the market state it implies: par swap rates for each
/// tenor pillar from the affine bond curve (annual fixed coupons), and the
/// vol state broadcast flat across the vol pillars.
MarketState model_to_market(const ModelState& state, const HullWhiteParams& hw,
                            const PillarConfig& pillars);

/// Simulated scenario set: model and market states for every (path, time)
/// node, market states regenerated from model states through
/// model_to_market. Generating parameters are kept for downstream use.
struct ScenarioCube {
    HullWhiteParams hw;
    std::optional<SabrParams> sabr;
    PillarConfig pillars;
    int paths = 0;
    std::vector<double> time_points;
    std::uint64_t seed = 0;
    std::vector<ModelState> model;    // index: path * time_count + time_index
    std::vector<MarketState> market;  // same indexing

    int time_count() const { return static_cast<int>(time_points.size()); }
    int model_dims() const { return sabr ? 2 : 1; }
    std::size_t node(int path, int ti) const {
        return static_cast<std::size_t>(path) * static_cast<std::size_t>(time_count()) +
               static_cast<std::size_t>(ti);
    }
    const ModelState& model_at(int path, int ti) const { return model[node(path, ti)]; }
    const MarketState& market_at(int path, int ti) const { return market[node(path, ti)]; }
};

/// Evolves the model factors over [0, max time] with exact transitions and
/// one independent substream per path, so results do not depend on the order
/// paths are processed in or on the thread count.
ScenarioCube simulate(const HullWhiteParams& hw, const std::optional<SabrParams>& sabr,
                      const PillarConfig& pillars, int paths,
                      const std::vector<double>& time_points, std::uint64_t seed,
                      unsigned threads = 1);

/// One extra exact transition of length dt from a given node state, using the
/// given standard normals (rate first, vol second when present).
ModelState evolve_one_step(const ModelState& state, const HullWhiteParams& hw,
                           const std::optional<SabrParams>& sabr, double dt, double z_rate,
                           double z_vol);

/// Standard normals for the auxiliary sub-step attached to (path, ti),
/// deterministic in (seed, path, ti) alone.
void substep_normals(std::uint64_t seed, int path, int time_count,
                     std::vector<double>& z_rate_out, std::vector<double>& z_vol_out);

/// Writes the cube as CSV (path, time, model factors, market factors).
void export_cube_csv(const ScenarioCube& cube, std::ostream& out);

}  // namespace chebdim
