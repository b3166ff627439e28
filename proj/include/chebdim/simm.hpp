#pragma once

#include <Eigen/Dense>
#include <string>

namespace chebdim {

class KvFile;

/// Single-bucket margin parameters: risk weights, intra-bucket correlations
/// and the quantile multiplier used by the regression baseline. Illustrative
/// calibration, not an official one.
struct SimmConfig {
    Eigen::VectorXd delta_risk_weights;   // one per rate pillar, > 0
    Eigen::MatrixXd rate_correlations;    // symmetric PSD, unit diagonal
    double vega_risk_weight = 0.0;        // > 0 when vol pillars exist
    double vega_correlation = 0.5;        // off-diagonal correlation between vol pillars
    int vol_pillar_count = 0;
    double quantile_z = 2.326;

    int rate_pillar_count() const { return static_cast<int>(delta_risk_weights.size()); }
    int factor_count() const { return rate_pillar_count() + vol_pillar_count; }

    /// Validates shapes, positivity and that the correlation matrix is
    /// symmetric with unit diagonal and positive semidefinite.
    void validate() const;

    /// Correlation matrix rho(k, l) = base^|k - l| for n pillars.
    static Eigen::MatrixXd power_decay_correlations(int n, double base);
};

struct MarginResult {
    double delta_margin = 0.0;
    double vega_margin = 0.0;
    double total = 0.0;
};

/// Margin from a flat sensitivity vector (rate pillars first, vol pillars
/// after): weighted sensitivities aggregated through the correlation matrix,
/// sqrt of the clamped quadratic form per block, blocks summed.
MarginResult simm_margin(const Eigen::VectorXd& sensitivities, const SimmConfig& config);

/// Loads a [simm] section (see the shipped default file for the schema).
SimmConfig load_simm_config(const std::string& path);
SimmConfig parse_simm_config(const KvFile& kv);

}  // namespace chebdim
