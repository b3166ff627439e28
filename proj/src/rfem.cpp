#include "chebdim/rfem.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "chebdim/parallel.hpp"

namespace chebdim {

namespace {

constexpr std::uint32_t kMainStream = 0x5c3a11u;
constexpr std::uint32_t kSubstepStream = 0xa5db07u;

std::mt19937_64 path_engine(std::uint64_t seed, int path, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), stream};
    return std::mt19937_64(seq);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double whole_year_tenor(double tenor, const char* field) {
    require(tenor >= 1.0 && std::floor(tenor) == tenor,
            std::string(field) + ": tenors must be whole years >= 1, got " + std::to_string(tenor));
    return tenor;
}

}  // namespace

void HullWhiteParams::validate() const {
    require(mean_reversion > 0.0, "hull_white.mean_reversion must be > 0");
    require(vol >= 0.0, "hull_white.vol must be >= 0");
    require(std::isfinite(initial_rate), "hull_white.initial_rate must be finite");
    require(std::isfinite(long_term_level), "hull_white.long_term_level must be finite");
}

void SabrParams::validate() const {
    require(initial_vol > 0.0, "sabr.initial_vol must be > 0");
    require(vol_of_vol >= 0.0, "sabr.vol_of_vol must be >= 0");
    require(beta >= 0.0 && beta <= 1.0, "sabr.beta must be in [0, 1]");
    require(correlation > -1.0 && correlation < 1.0, "sabr.correlation must be in (-1, 1)");
}

void PillarConfig::validate() const {
    require(!swap_tenors.empty(), "pillars.swap_tenors must not be empty");
    for (std::size_t i = 0; i < swap_tenors.size(); ++i) {
        whole_year_tenor(swap_tenors[i], "pillars.swap_tenors");
        if (i > 0)
            require(swap_tenors[i] > swap_tenors[i - 1],
                    "pillars.swap_tenors must be strictly increasing");
    }
    for (std::size_t i = 0; i < vol_expiries.size(); ++i) {
        require(vol_expiries[i] > 0.0, "pillars.vol_expiries must be > 0");
        if (i > 0)
            require(vol_expiries[i] > vol_expiries[i - 1],
                    "pillars.vol_expiries must be strictly increasing");
    }
}

double MarketState::factor(int i) const {
    const int p = static_cast<int>(swap_rates.size());
    if (i < 0 || i >= factor_count())
        throw std::out_of_range("MarketState::factor: index " + std::to_string(i) + " out of " +
                                std::to_string(factor_count()));
    return i < p ? swap_rates[i] : vols[i - p];
}

void MarketState::set_factor(int i, double v) {
    const int p = static_cast<int>(swap_rates.size());
    if (i < 0 || i >= factor_count())
        throw std::out_of_range("MarketState::set_factor: index " + std::to_string(i) + " out of " +
                                std::to_string(factor_count()));
    if (i < p)
        swap_rates[i] = v;
    else
        vols[i - p] = v;
}

double hw_bond_b(double kappa, double tau) { return (1.0 - std::exp(-kappa * tau)) / kappa; }

double hw_bond_price(const HullWhiteParams& hw, double r, double tau) {
    const double k = hw.mean_reversion;
    const double s = hw.vol;
    const double b = hw_bond_b(k, tau);
    const double log_a =
        (hw.long_term_level - s * s / (2.0 * k * k)) * (b - tau) - s * s * b * b / (4.0 * k);
    return std::exp(log_a - b * r);
}

MarketState model_to_market(const ModelState& state, const HullWhiteParams& hw,
                            const PillarConfig& pillars) {
    require(state.factors.size() >= 1, "model_to_market: model state has no factors");
    require(pillars.vol_count() == 0 || state.factors.size() >= 2,
            "model_to_market: vol pillars configured but model state has no vol factor");
    const double r = state.factors[0];

    const int max_tenor = static_cast<int>(pillars.swap_tenors.back());
    std::vector<double> discount(static_cast<std::size_t>(max_tenor) + 1, 1.0);
    for (int i = 1; i <= max_tenor; ++i)
        discount[static_cast<std::size_t>(i)] = hw_bond_price(hw, r, static_cast<double>(i));

    MarketState out;
    out.swap_rates.resize(pillars.rate_count());
    double annuity = 0.0;
    int next = 1;
    for (int k = 0; k < pillars.rate_count(); ++k) {
        const int tenor = static_cast<int>(pillars.swap_tenors[static_cast<std::size_t>(k)]);
        for (; next <= tenor; ++next) annuity += discount[static_cast<std::size_t>(next)];
        out.swap_rates[k] = (1.0 - discount[static_cast<std::size_t>(tenor)]) / annuity;
    }

    out.vols.resize(pillars.vol_count());
    if (pillars.vol_count() > 0) {
        const double v = state.factors[1];
        require(v > 0.0, "model_to_market: vol state must be > 0");
        out.vols.setConstant(v);
    }
    return out;
}

ModelState evolve_one_step(const ModelState& state, const HullWhiteParams& hw,
                           const std::optional<SabrParams>& sabr, double dt, double z_rate,
                           double z_vol) {
    const double k = hw.mean_reversion;
    const double decay = std::exp(-k * dt);
    const double stdev = hw.vol * std::sqrt((1.0 - std::exp(-2.0 * k * dt)) / (2.0 * k));
    ModelState out;
    out.factors.resize(state.factors.size());
    out.factors[0] =
        hw.long_term_level + (state.factors[0] - hw.long_term_level) * decay + stdev * z_rate;
    if (sabr) {
        const double nu = sabr->vol_of_vol;
        out.factors[1] =
            state.factors[1] * std::exp(-0.5 * nu * nu * dt + nu * std::sqrt(dt) * z_vol);
    }
    return out;
}

ScenarioCube simulate(const HullWhiteParams& hw, const std::optional<SabrParams>& sabr,
                      const PillarConfig& pillars, int paths,
                      const std::vector<double>& time_points, std::uint64_t seed,
                      unsigned threads) {
    hw.validate();
    if (sabr) sabr->validate();
    pillars.validate();
    require(paths >= 1, "simulate: paths must be >= 1");
    require(!time_points.empty(), "simulate: time_points must not be empty");
    require(time_points.front() > 0.0, "simulate: time_points must start after 0");
    for (std::size_t i = 1; i < time_points.size(); ++i)
        require(time_points[i] > time_points[i - 1],
                "simulate: time_points must be strictly increasing");
    require(pillars.vol_count() == 0 || sabr.has_value(),
            "simulate: vol pillars configured without sabr parameters");

    ScenarioCube cube;
    cube.hw = hw;
    cube.sabr = sabr;
    cube.pillars = pillars;
    cube.paths = paths;
    cube.time_points = time_points;
    cube.seed = seed;
    const int T = cube.time_count();
    const int k = cube.model_dims();
    cube.model.resize(static_cast<std::size_t>(paths) * static_cast<std::size_t>(T));
    cube.market.resize(cube.model.size());

    parallel_for(static_cast<std::size_t>(paths), threads, [&](std::size_t p) {
        std::mt19937_64 rng = path_engine(seed, static_cast<int>(p), kMainStream);
        std::normal_distribution<double> normal(0.0, 1.0);
        ModelState state;
        state.factors.resize(k);
        state.factors[0] = hw.initial_rate;
        if (sabr) state.factors[1] = sabr->initial_vol;
        double prev = 0.0;
        for (int ti = 0; ti < T; ++ti) {
            const double dt = time_points[static_cast<std::size_t>(ti)] - prev;
            prev = time_points[static_cast<std::size_t>(ti)];
            const double z_rate = normal(rng);
            const double z_vol = sabr ? normal(rng) : 0.0;
            state = evolve_one_step(state, hw, sabr, dt, z_rate, z_vol);
            const std::size_t idx = cube.node(static_cast<int>(p), ti);
            cube.model[idx] = state;
            cube.market[idx] = model_to_market(state, hw, pillars);
        }
    });
    return cube;
}

void substep_normals(std::uint64_t seed, int path, int time_count, std::vector<double>& z_rate_out,
                     std::vector<double>& z_vol_out) {
    std::mt19937_64 rng = path_engine(seed, path, kSubstepStream);
    std::normal_distribution<double> normal(0.0, 1.0);
    z_rate_out.resize(static_cast<std::size_t>(time_count));
    z_vol_out.resize(static_cast<std::size_t>(time_count));
    for (int ti = 0; ti < time_count; ++ti) {
        z_rate_out[static_cast<std::size_t>(ti)] = normal(rng);
        z_vol_out[static_cast<std::size_t>(ti)] = normal(rng);
    }
}

void export_cube_csv(const ScenarioCube& cube, std::ostream& out) {
    char buf[40];
    out << "path,time";
    out << ",model_rate";
    if (cube.model_dims() > 1) out << ",model_vol";
    for (double tenor : cube.pillars.swap_tenors) out << ",swap_" << static_cast<int>(tenor) << "y";
    for (std::size_t i = 0; i < cube.pillars.vol_expiries.size(); ++i) out << ",vol_" << i;
    out << '\n';
    for (int p = 0; p < cube.paths; ++p) {
        for (int ti = 0; ti < cube.time_count(); ++ti) {
            out << p;
            std::snprintf(buf, sizeof(buf), "%.17g", cube.time_points[static_cast<std::size_t>(ti)]);
            out << ',' << buf;
            const ModelState& ms = cube.model_at(p, ti);
            for (Eigen::Index f = 0; f < ms.factors.size(); ++f) {
                std::snprintf(buf, sizeof(buf), "%.17g", ms.factors[f]);
                out << ',' << buf;
            }
            const MarketState& mk = cube.market_at(p, ti);
            for (int f = 0; f < mk.factor_count(); ++f) {
                std::snprintf(buf, sizeof(buf), "%.17g", mk.factor(f));
                out << ',' << buf;
            }
            out << '\n';
        }
    }
}

}  // namespace chebdim
