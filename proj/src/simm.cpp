#include "chebdim/simm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chebdim/kvfile.hpp"

namespace chebdim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double correlated_quadratic(const Eigen::VectorXd& ws, const Eigen::MatrixXd& rho) {
    const double q = ws.transpose() * rho * ws;
    return std::sqrt(std::max(q, 0.0));
}

}  // namespace

Eigen::MatrixXd SimmConfig::power_decay_correlations(int n, double base) {
    Eigen::MatrixXd rho(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho(i, j) = std::pow(base, std::abs(i - j));
    return rho;
}

void SimmConfig::validate() const {
    require(delta_risk_weights.size() > 0, "simm: delta_risk_weights must not be empty");
    require((delta_risk_weights.array() > 0.0).all(), "simm: delta_risk_weights must be > 0");
    const int n = rate_pillar_count();
    require(rate_correlations.rows() == n && rate_correlations.cols() == n,
            "simm: correlation matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    require(rate_correlations.isApprox(rate_correlations.transpose(), 1e-12),
            "simm: correlation matrix must be symmetric");
    for (int i = 0; i < n; ++i)
        require(std::abs(rate_correlations(i, i) - 1.0) < 1e-12,
                "simm: correlation matrix must have unit diagonal");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rate_correlations);
    require(eig.eigenvalues().minCoeff() > -1e-10,
            "simm: correlation matrix must be positive semidefinite");
    require(vol_pillar_count >= 0, "simm: vol_pillar_count must be >= 0");
    if (vol_pillar_count > 0)
        require(vega_risk_weight > 0.0, "simm: vega_risk_weight must be > 0");
    require(vega_correlation >= -1.0 && vega_correlation <= 1.0,
            "simm: vega_correlation must be in [-1, 1]");
    require(quantile_z > 0.0, "simm: quantile_z must be > 0");
}

MarginResult simm_margin(const Eigen::VectorXd& sensitivities, const SimmConfig& config) {
    const int p = config.rate_pillar_count();
    const int v = config.vol_pillar_count;
    require(sensitivities.size() == p + v,
            "simm_margin: expected " + std::to_string(p + v) + " sensitivities, got " +
                std::to_string(sensitivities.size()));

    MarginResult out;
    const Eigen::VectorXd ws = config.delta_risk_weights.cwiseProduct(sensitivities.head(p));
    out.delta_margin = correlated_quadratic(ws, config.rate_correlations);

    if (v > 0) {
        Eigen::MatrixXd rho_v = Eigen::MatrixXd::Constant(v, v, config.vega_correlation);
        rho_v.diagonal().setOnes();
        const Eigen::VectorXd ws_v = config.vega_risk_weight * sensitivities.tail(v);
        out.vega_margin = correlated_quadratic(ws_v, rho_v);
    }
    out.total = out.delta_margin + out.vega_margin;
    return out;
}

SimmConfig parse_simm_config(const KvFile& kv) {
    SimmConfig config;
    const std::vector<double> weights = kv.require_double_list("simm", "delta_risk_weights");
    config.delta_risk_weights =
        Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));

    const int n = static_cast<int>(weights.size());
    if (auto rows = kv.find("simm", "correlation_matrix")) {
        // Explicit rows separated by ';', entries by ','.
        Eigen::MatrixXd rho(n, n);
        std::vector<std::string> row_text;
        std::string item;
        std::istringstream in(*rows);
        while (std::getline(in, item, ';')) row_text.push_back(item);
        if (static_cast<int>(row_text.size()) != n)
            kv.fail("simm", "correlation_matrix",
                    "expected " + std::to_string(n) + " rows, got " +
                        std::to_string(row_text.size()));
        for (int i = 0; i < n; ++i) {
            const auto cells = split_list(row_text[static_cast<std::size_t>(i)]);
            if (static_cast<int>(cells.size()) != n)
                kv.fail("simm", "correlation_matrix",
                        "row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                            " entries, expected " + std::to_string(n));
            for (int j = 0; j < n; ++j)
                rho(i, j) = parse_double_field(cells[static_cast<std::size_t>(j)],
                                               "simm correlation_matrix");
        }
        config.rate_correlations = rho;
    } else {
        const double base = kv.get_double_or("simm", "correlation_base", 0.5);
        config.rate_correlations = SimmConfig::power_decay_correlations(n, base);
    }

    config.vol_pillar_count = static_cast<int>(kv.get_int_or("simm", "vol_pillar_count", 0));
    config.vega_risk_weight = kv.get_double_or("simm", "vega_risk_weight", 0.0);
    config.vega_correlation = kv.get_double_or("simm", "vega_correlation", 0.5);
    config.quantile_z = kv.get_double_or("simm", "quantile_z", 2.326);
    config.validate();
    return config;
}

SimmConfig load_simm_config(const std::string& path) {
    return parse_simm_config(KvFile::parse_file(path));
}

}  // namespace chebdim
