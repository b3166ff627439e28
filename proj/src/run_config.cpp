#include "chebdim/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "chebdim/dim_methods.hpp"
#include "chebdim/kvfile.hpp"

namespace chebdim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Forward par rate of the underlying swap seen from time 0, for resolving
// moneyness labels.
double forward_rate_at_inception(const RunConfig& config, const SwaptionTrade& opt) {
    ModelState state;
    state.factors.resize(config.model_dims());
    state.factors[0] = config.hw.initial_rate;
    if (config.sabr) state.factors[1] = config.sabr->initial_vol;
    const MarketState market = model_to_market(state, config.hw, config.pillars);
    ParCurve curve(market.swap_rates, config.pillars.swap_tenors);
    double annuity = 0.0;
    const int tenor = static_cast<int>(opt.underlying_tenor);
    for (int i = 1; i <= tenor; ++i) annuity += curve.discount(opt.expiry + i);
    return (curve.discount(opt.expiry) - curve.discount(opt.expiry + tenor)) / annuity;
}

PayReceive parse_direction(const KvFile& kv, const std::string& section) {
    const std::string text = kv.get_or(section, "direction", "payer");
    if (text == "payer") return PayReceive::payer;
    if (text == "receiver") return PayReceive::receiver;
    kv.fail(section, "direction", "expected payer or receiver, got '" + text + "'");
}

NamedTrade parse_trade(const KvFile& kv, const std::string& section, const RunConfig& config) {
    NamedTrade named;
    named.name = section.size() > 6 ? section.substr(6) : section;  // strip "trade "
    require(!named.name.empty(), "config: trade section needs a name, e.g. [trade swap10y]");

    const std::string type = kv.require(section, "type");
    const double notional = kv.require_double(section, "notional");
    require(notional > 0.0, "config: [" + section + "] notional must be > 0");

    if (type == "swap") {
        SwapTrade swap;
        swap.notional = notional;
        swap.fixed_rate = kv.require_double(section, "fixed_rate");
        swap.maturity = kv.require_double(section, "maturity");
        require(swap.maturity > 0.0, "config: [" + section + "] maturity must be > 0");
        swap.direction = parse_direction(kv, section);
        named.trade = swap;
    } else if (type == "swaption") {
        // Checked again in validate(), but moneyness resolution below needs
        // the smile already, so fail with the field name rather than from
        // deep inside the forward computation.
        require(config.sabr.has_value(),
                "config: [" + section + "] swaption requires a [sabr] section");
        SwaptionTrade opt;
        opt.notional = notional;
        opt.expiry = kv.require_double(section, "expiry");
        require(opt.expiry > 0.0, "config: [" + section + "] expiry must be > 0");
        opt.underlying_tenor = kv.require_double(section, "tenor");
        require(opt.underlying_tenor >= 1.0 && std::floor(opt.underlying_tenor) == opt.underlying_tenor,
                "config: [" + section + "] tenor must be a whole number of years >= 1");
        opt.direction = parse_direction(kv, section);

        const std::string strike = kv.require(section, "strike");
        if (strike == "atm" || strike == "itm" || strike == "otm") {
            const double forward = forward_rate_at_inception(config, opt);
            // In-the-money means the forward already favours the holder;
            // +-20% of the forward, mirrored for receivers.
            const double shift = (strike == "atm") ? 1.0
                                 : (strike == "itm") == (opt.direction == PayReceive::payer)
                                     ? 0.8
                                     : 1.2;
            opt.strike = forward * shift;
            opt.moneyness = strike == "atm"   ? Moneyness::atm
                            : strike == "itm" ? Moneyness::itm
                                              : Moneyness::otm;
        } else {
            opt.strike = parse_double_field(strike, "config: [" + section + "] strike");
            opt.moneyness = Moneyness::custom;
        }
        require(opt.strike > 0.0, "config: [" + section + "] strike must resolve to > 0");
        named.trade = opt;
    } else {
        kv.fail(section, "type", "expected swap or swaption, got '" + type + "'");
    }
    return named;
}

}  // namespace

bool is_known_method(const std::string& name) {
    return name == method_name::brute_force || name == method_name::model_space ||
           name == method_name::market_space || name == method_name::regression_poly ||
           name == method_name::regression_nw;
}

void RunConfig::validate() const {
    hw.validate();
    if (sabr) sabr->validate();
    pillars.validate();
    simm.validate();

    require(paths >= 1, "config: [simulation] paths must be >= 1");
    require(!time_points.empty(), "config: [simulation] time_points must not be empty");
    require(time_points.front() > 0.0, "config: [simulation] time_points must start after 0");
    for (std::size_t i = 1; i < time_points.size(); ++i)
        require(time_points[i] > time_points[i - 1],
                "config: [simulation] time_points must be strictly increasing");

    require(!methods.empty(), "config: [run] methods must list at least one method");
    for (const std::string& m : methods)
        require(is_known_method(m), "config: [run] methods: unknown method '" + m + "'");
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            require(methods[i] != methods[j],
                    "config: [run] methods: '" + methods[i] + "' listed twice");
    const bool has_brute =
        std::find(methods.begin(), methods.end(), method_name::brute_force) != methods.end();
    require(has_brute || methods.size() == 1,
            "config: [run] methods: brute_force is required as the benchmark when any other "
            "method is run");

    require(threads >= 1, "config: [run] threads must be >= 1");
    require(static_cast<int>(model_mesh.size()) == model_dims(),
            "config: [mesh] model_space needs " + std::to_string(model_dims()) +
                " entries (one per model dimension)");
    for (int m : model_mesh) require(m >= 2, "config: [mesh] model_space entries must be >= 2");
    require(market_mesh >= 2, "config: [mesh] market_space must be >= 2");
    require(regression_horizon_days > 0.0, "config: [regression] horizon_days must be > 0");
    require(bumps.rate_bump > 0.0, "config: [bumps] rate must be > 0");
    require(bumps.vol_bump > 0.0, "config: [bumps] vol must be > 0");

    require(simm.rate_pillar_count() == pillars.rate_count(),
            "config: simm delta_risk_weights must match [pillars] swap_tenors in length");
    require(simm.vol_pillar_count == pillars.vol_count(),
            "config: simm vol_pillar_count must match [pillars] vol_expiries in length");

    require(!trades.empty(), "config: at least one [trade <name>] block is required");
    const double max_tenor = pillars.swap_tenors.back();
    for (const NamedTrade& named : trades) {
        if (const auto* swap = std::get_if<SwapTrade>(&named.trade)) {
            require(swap->maturity <= max_tenor,
                    "config: [trade " + named.name + "] maturity beyond the last rate pillar");
        } else {
            const auto& opt = std::get<SwaptionTrade>(named.trade);
            require(sabr.has_value(),
                    "config: [trade " + named.name + "] swaption requires a [sabr] section");
            require(pillars.vol_count() > 0,
                    "config: [trade " + named.name + "] swaption requires vol pillars");
            require(opt.expiry + opt.underlying_tenor <= max_tenor,
                    "config: [trade " + named.name +
                        "] expiry + tenor beyond the last rate pillar");
            // IM profiles for options are tracked up to expiry only.
            require(time_points.back() <= opt.expiry,
                    "config: [trade " + named.name + "] time_points must stop at expiry");
        }
    }
}

RunConfig load_run_config(const std::string& path, const ConfigOverrides& overrides) {
    const KvFile kv = KvFile::parse_file(path);
    RunConfig config;

    config.paths = static_cast<int>(kv.require_int("simulation", "paths"));
    config.time_points = kv.require_double_list("simulation", "time_points");
    const std::int64_t seed = kv.require_int("simulation", "seed");
    require(seed >= 0, "config: [simulation] seed must be >= 0");
    config.seed = static_cast<std::uint64_t>(seed);

    config.hw.mean_reversion = kv.require_double("hull_white", "mean_reversion");
    config.hw.vol = kv.require_double("hull_white", "vol");
    config.hw.initial_rate = kv.require_double("hull_white", "initial_rate");
    config.hw.long_term_level = kv.require_double("hull_white", "long_term_level");

    if (kv.has_section("sabr")) {
        SabrParams sabr;
        sabr.initial_vol = kv.require_double("sabr", "initial_vol");
        sabr.vol_of_vol = kv.require_double("sabr", "vol_of_vol");
        sabr.beta = kv.get_double_or("sabr", "beta", 0.5);
        sabr.correlation = kv.get_double_or("sabr", "correlation", -0.3);
        config.sabr = sabr;
    }

    config.pillars.swap_tenors = kv.require_double_list("pillars", "swap_tenors");
    config.pillars.vol_expiries = kv.get_double_list_or("pillars", "vol_expiries", {});

    config.methods = kv.require_string_list("run", "methods");
    config.out_dir = kv.get_or("run", "out_dir", "out");
    config.threads = static_cast<unsigned>(kv.get_int_or("run", "threads", 1));
    config.export_cube = kv.get_int_or("run", "export_cube", 0) != 0;

    config.simm_config_path = kv.require("run", "simm_config");
    // Relative simm paths resolve against the config file's directory.
    std::filesystem::path simm_path(config.simm_config_path);
    if (simm_path.is_relative())
        simm_path = std::filesystem::path(path).parent_path() / simm_path;
    config.simm = load_simm_config(simm_path.string());

    const int k = config.model_dims();
    std::vector<double> mesh_raw =
        kv.get_double_list_or("mesh", "model_space", std::vector<double>(1, 5.0));
    if (mesh_raw.size() == 1 && k > 1) mesh_raw.assign(static_cast<std::size_t>(k), mesh_raw[0]);
    config.model_mesh.clear();
    for (double m : mesh_raw) {
        require(std::floor(m) == m, "config: [mesh] model_space entries must be integers");
        config.model_mesh.push_back(static_cast<int>(m));
    }
    config.market_mesh = static_cast<int>(kv.get_int_or("mesh", "market_space", 10));
    config.regression_horizon_days = kv.get_double_or("regression", "horizon_days", 10.0);
    config.bumps.rate_bump = kv.get_double_or("bumps", "rate", 1e-4);
    config.bumps.vol_bump = kv.get_double_or("bumps", "vol", 1e-3);

    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.paths) config.paths = *overrides.paths;
    if (overrides.out_dir) config.out_dir = *overrides.out_dir;
    if (overrides.methods) config.methods = *overrides.methods;
    if (overrides.threads) config.threads = *overrides.threads;

    for (const std::string& section : kv.sections_with_prefix("trade "))
        config.trades.push_back(parse_trade(kv, section, config));

    config.validate();
    return config;
}

}  // namespace chebdim
