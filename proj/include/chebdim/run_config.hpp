#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chebdim/pricing.hpp"
#include "chebdim/rfem.hpp"
#include "chebdim/simm.hpp"
#include "chebdim/trades.hpp"

namespace chebdim {

struct NamedTrade {
    std::string name;
    Trade trade;
};

/// Everything a run needs, loaded from a flat key-value config file (see the
/// shipped configs for the schema). Swaption strikes given as moneyness
/// labels are resolved against the time-0 forward during loading.
struct RunConfig {
    // [simulation]
    int paths = 0;
    std::vector<double> time_points;
    std::uint64_t seed = 0;

    // [hull_white], [sabr] (optional), [pillars]
    HullWhiteParams hw;
    std::optional<SabrParams> sabr;
    PillarConfig pillars;

    // [run]
    std::vector<std::string> methods;
    std::string out_dir = "out";
    unsigned threads = 1;
    bool export_cube = false;
    std::string simm_config_path;
    SimmConfig simm;

    // [mesh], [regression], [bumps]
    std::vector<int> model_mesh;  // one entry per model dimension
    int market_mesh = 10;
    double regression_horizon_days = 10.0;
    BumpConfig bumps;

    // [trade <name>] blocks, in file order
    std::vector<NamedTrade> trades;

    int model_dims() const { return sabr ? 2 : 1; }
    double regression_horizon_years() const { return regression_horizon_days / 252.0; }

    /// Cross-field checks; throws std::invalid_argument naming the field.
    void validate() const;
};

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> paths;
    std::optional<std::string> out_dir;
    std::optional<std::vector<std::string>> methods;
    std::optional<unsigned> threads;
};

RunConfig load_run_config(const std::string& path, const ConfigOverrides& overrides = {});

bool is_known_method(const std::string& name);

}  // namespace chebdim
