#include "chebdim/dim_methods.hpp"

#include <cmath>
#include <stdexcept>

#include "chebdim/chebyshev.hpp"
#include "chebdim/market_slice.hpp"
#include "chebdim/parallel.hpp"
#include "chebdim/regression.hpp"

namespace chebdim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_inputs(const ScenarioCube& cube, const SimmConfig& simm) {
    require(cube.paths > 0 && cube.time_count() > 0, "dim: empty scenario cube");
    require(simm.rate_pillar_count() == cube.pillars.rate_count(),
            "dim: simm config has " + std::to_string(simm.rate_pillar_count()) +
                " rate pillars, cube has " + std::to_string(cube.pillars.rate_count()));
    require(simm.vol_pillar_count == cube.pillars.vol_count(),
            "dim: simm config has " + std::to_string(simm.vol_pillar_count) +
                " vol pillars, cube has " + std::to_string(cube.pillars.vol_count()));
}

PricerSetup setup_from(const ScenarioCube& cube) { return {cube.pillars, cube.sabr}; }

void fill_margins(const SensitivityMatrix& sens, const SimmConfig& simm, DimSurface& surface,
                  int paths, int T) {
    surface.im.resize(paths, T);
    for (int p = 0; p < paths; ++p)
        for (int ti = 0; ti < T; ++ti) {
            const Eigen::Index row = static_cast<Eigen::Index>(p) * T + ti;
            surface.im(p, ti) = simm_margin(sens.values.row(row).transpose(), simm).total;
        }
}

}  // namespace

DimResult brute_force_dim(const ScenarioCube& cube, const Trade& trade, const BumpConfig& bumps,
                          const SimmConfig& simm, unsigned threads) {
    check_inputs(cube, simm);
    const PricerSetup setup = setup_from(cube);
    const int T = cube.time_count();
    const int l = cube.pillars.factor_count();
    CallCounter counter(method_name::brute_force);

    DimResult out;
    out.sens.method = method_name::brute_force;
    out.surface.method = method_name::brute_force;
    out.sens.values.resize(static_cast<Eigen::Index>(cube.paths) * T, l);

    parallel_for(static_cast<std::size_t>(cube.paths) * static_cast<std::size_t>(T), threads,
                 [&](std::size_t node) {
                     const int p = static_cast<int>(node / static_cast<std::size_t>(T));
                     const int ti = static_cast<int>(node % static_cast<std::size_t>(T));
                     const double t = cube.time_points[static_cast<std::size_t>(ti)];
                     out.sens.values.row(static_cast<Eigen::Index>(node)) =
                         all_sensitivities(trade, cube.market_at(p, ti), t, setup, bumps, counter)
                             .transpose();
                 });

    fill_margins(out.sens, simm, out.surface, cube.paths, T);
    out.sens.pricer_calls = counter.count();
    return out;
}

DimResult model_space_dim(const ScenarioCube& cube, const Trade& trade,
                          const std::vector<int>& mesh, const BumpConfig& bumps,
                          const SimmConfig& simm, unsigned threads) {
    check_inputs(cube, simm);
    const int k = cube.model_dims();
    require(static_cast<int>(mesh.size()) == k,
            "model_space_dim: mesh has " + std::to_string(mesh.size()) + " entries for " +
                std::to_string(k) + " model dimensions");
    for (int m : mesh) require(m >= 2, "model_space_dim: mesh points per dimension must be >= 2");

    const PricerSetup setup = setup_from(cube);
    const int T = cube.time_count();
    const int l = cube.pillars.factor_count();
    CallCounter counter(method_name::model_space);

    DimResult out;
    out.sens.method = method_name::model_space;
    out.surface.method = method_name::model_space;
    out.sens.values.resize(static_cast<Eigen::Index>(cube.paths) * T, l);

    for (int ti = 0; ti < T; ++ti) {
        const double t = cube.time_points[static_cast<std::size_t>(ti)];

        Eigen::VectorXd lo = cube.model_at(0, ti).factors;
        Eigen::VectorXd hi = lo;
        for (int p = 1; p < cube.paths; ++p) {
            lo = lo.cwiseMin(cube.model_at(p, ti).factors);
            hi = hi.cwiseMax(cube.model_at(p, ti).factors);
        }
        std::vector<int> active;
        for (int d = 0; d < k; ++d)
            if (lo[d] < hi[d]) active.push_back(d);

        if (active.empty()) {
            // Every factor collapsed to a point: one sample serves all paths.
            ModelState state;
            state.factors = lo;
            const MarketState market = model_to_market(state, cube.hw, cube.pillars);
            const Eigen::VectorXd sens =
                all_sensitivities(trade, market, t, setup, bumps, counter);
            for (int p = 0; p < cube.paths; ++p)
                out.sens.values.row(static_cast<Eigen::Index>(p) * T + ti) = sens.transpose();
            continue;
        }

        std::vector<Interval> box;
        std::vector<int> counts;
        for (int d : active) {
            box.emplace_back(lo[d], hi[d]);
            counts.push_back(mesh[static_cast<std::size_t>(d)]);
        }
        ChebyshevGrid grid(HyperRectangle(std::move(box)), std::move(counts));

        Eigen::MatrixXd node_sens(static_cast<Eigen::Index>(grid.size()), l);
        parallel_for(grid.size(), threads, [&](std::size_t g) {
            const Eigen::VectorXd coords = grid.node(g);
            ModelState state;
            state.factors = lo;  // frozen dimensions keep their single value
            for (std::size_t a = 0; a < active.size(); ++a)
                state.factors[active[a]] = coords[static_cast<Eigen::Index>(a)];
            const MarketState market = model_to_market(state, cube.hw, cube.pillars);
            node_sens.row(static_cast<Eigen::Index>(g)) =
                all_sensitivities(trade, market, t, setup, bumps, counter).transpose();
        });

        std::vector<ChebyshevTensor> tensors;
        tensors.reserve(static_cast<std::size_t>(l));
        for (int f = 0; f < l; ++f) tensors.emplace_back(grid, node_sens.col(f).eval());

        parallel_for(static_cast<std::size_t>(cube.paths), threads, [&](std::size_t p) {
            Eigen::VectorXd coords(static_cast<Eigen::Index>(active.size()));
            for (std::size_t a = 0; a < active.size(); ++a)
                coords[static_cast<Eigen::Index>(a)] =
                    cube.model_at(static_cast<int>(p), ti).factors[active[a]];
            const Eigen::Index row = static_cast<Eigen::Index>(p) * T + ti;
            for (int f = 0; f < l; ++f)
                out.sens.values(row, f) = eval_nd(tensors[static_cast<std::size_t>(f)], coords);
        });
    }

    fill_margins(out.sens, simm, out.surface, cube.paths, T);
    out.sens.pricer_calls = counter.count();
    return out;
}

DimResult market_space_dim(const ScenarioCube& cube, const Trade& trade, int mesh,
                           const BumpConfig& bumps, const SimmConfig& simm, unsigned threads) {
    check_inputs(cube, simm);
    require(mesh >= 2, "market_space_dim: mesh must be >= 2");

    const PricerSetup setup = setup_from(cube);
    const int T = cube.time_count();
    const int l = cube.pillars.factor_count();
    CallCounter counter(method_name::market_space);

    DimResult out;
    out.sens.method = method_name::market_space;
    out.surface.method = method_name::market_space;
    out.sens.values.resize(static_cast<Eigen::Index>(cube.paths) * T, l);

    for (int ti = 0; ti < T; ++ti) {
        const double t = cube.time_points[static_cast<std::size_t>(ti)];
        for (int f = 0; f < l; ++f) {
            const MarketSpaceSlice slice = make_slice(cube, f, ti);
            const double bump = bumps.bump_for(cube.pillars, f);

            if (slice.degenerate()) {
                const MarketState state = market_from_slice(slice, slice.lo());
                const double value = fd_sensitivity(trade, state, t, setup, {f, bump}, counter);
                for (int p = 0; p < cube.paths; ++p)
                    out.sens.values(static_cast<Eigen::Index>(p) * T + ti, f) = value;
                continue;
            }

            ChebyshevGrid grid(HyperRectangle{Interval(slice.lo(), slice.hi())}, {mesh});
            Eigen::VectorXd node_values(static_cast<Eigen::Index>(grid.size()));
            parallel_for(grid.size(), threads, [&](std::size_t g) {
                const double s = grid.points(0)[static_cast<Eigen::Index>(g)];
                const MarketState state = market_from_slice(slice, s);
                node_values[static_cast<Eigen::Index>(g)] =
                    fd_sensitivity(trade, state, t, setup, {f, bump}, counter);
            });
            const ChebyshevTensor tensor(grid, std::move(node_values));

            parallel_for(static_cast<std::size_t>(cube.paths), threads, [&](std::size_t p) {
                const double s = cube.market_at(static_cast<int>(p), ti).factor(f);
                out.sens.values(static_cast<Eigen::Index>(p) * T + ti, f) = eval_1d(tensor, s);
            });
        }
    }

    fill_margins(out.sens, simm, out.surface, cube.paths, T);
    out.sens.pricer_calls = counter.count();
    return out;
}

RegressionResult regression_dim(const ScenarioCube& cube, const Trade& trade, RegressionKind kind,
                                double horizon_years, double quantile_z, unsigned threads) {
    require(cube.paths > 0 && cube.time_count() > 0, "regression_dim: empty scenario cube");
    require(horizon_years > 0.0, "regression_dim: horizon must be > 0");
    require(quantile_z > 0.0, "regression_dim: quantile_z must be > 0");

    const PricerSetup setup = setup_from(cube);
    const int T = cube.time_count();
    const int k = cube.model_dims();
    CallCounter counter(kind == RegressionKind::polynomial ? method_name::regression_poly
                                                           : method_name::regression_nw);

    RegressionResult out;
    out.surface.method = counter.label();
    out.surface.im.resize(cube.paths, T);

    // PnL over the horizon along each path's auxiliary sub-step.
    Eigen::MatrixXd pnl(cube.paths, T);
    parallel_for(static_cast<std::size_t>(cube.paths), threads, [&](std::size_t p) {
        std::vector<double> z_rate, z_vol;
        substep_normals(cube.seed, static_cast<int>(p), T, z_rate, z_vol);
        for (int ti = 0; ti < T; ++ti) {
            const double t = cube.time_points[static_cast<std::size_t>(ti)];
            const ModelState& state = cube.model_at(static_cast<int>(p), ti);
            const ModelState moved =
                evolve_one_step(state, cube.hw, cube.sabr, horizon_years,
                                z_rate[static_cast<std::size_t>(ti)],
                                z_vol[static_cast<std::size_t>(ti)]);
            const MarketState market_moved = model_to_market(moved, cube.hw, cube.pillars);
            const double pv_now =
                price(trade, cube.market_at(static_cast<int>(p), ti), t, setup, counter);
            const double pv_moved = price(trade, market_moved, t + horizon_years, setup, counter);
            pnl(static_cast<Eigen::Index>(p), ti) = pv_moved - pv_now;
        }
    });

    std::vector<int> fallbacks(static_cast<std::size_t>(T), 0);
    parallel_for(static_cast<std::size_t>(T), threads, [&](std::size_t tix) {
        const int ti = static_cast<int>(tix);
        Eigen::MatrixXd X(cube.paths, k);
        for (int p = 0; p < cube.paths; ++p)
            X.row(p) = cube.model_at(p, ti).factors.transpose();
        const Eigen::VectorXd y = pnl.col(ti);

        // A constant response has zero conditional variance; answering
        // exactly (rather than through the fit) keeps degenerate scenario
        // sets at identically zero margin.
        if ((y.array() == y[0]).all()) {
            out.surface.im.col(ti).setZero();
            return;
        }

        Eigen::VectorXd mean_hat;
        Eigen::VectorXd var_hat;
        bool fell_back = false;

        if (kind == RegressionKind::polynomial) {
            // Standardise and drop collapsed columns to keep the design sane.
            std::vector<int> live;
            Eigen::VectorXd mu(k), sd(k);
            for (int j = 0; j < k; ++j) {
                mu[j] = X.col(j).mean();
                sd[j] = std::sqrt((X.col(j).array() - mu[j]).square().sum() /
                                  std::max(cube.paths - 1, 1));
                if (sd[j] > 0.0 && cube.paths > 1) live.push_back(j);
            }
            Eigen::MatrixXd Z(cube.paths, static_cast<Eigen::Index>(live.size()));
            for (std::size_t c = 0; c < live.size(); ++c)
                Z.col(static_cast<Eigen::Index>(c)) =
                    (X.col(live[c]).array() - mu[live[c]]) / sd[live[c]];
            fell_back = live.size() < static_cast<std::size_t>(k);

            const Eigen::MatrixXd basis = quadratic_basis(Z);
            const LeastSquaresFit mean_fit = fit_least_squares(basis, y);
            if (mean_fit.ok) {
                mean_hat = basis * mean_fit.coeffs;
            } else {
                mean_hat = Eigen::VectorXd::Constant(cube.paths, y.mean());
                fell_back = true;
            }
            const Eigen::VectorXd sq = (y - mean_hat).array().square();
            const LeastSquaresFit var_fit = fit_least_squares(basis, sq);
            if (var_fit.ok) {
                var_hat = basis * var_fit.coeffs;
            } else {
                var_hat = Eigen::VectorXd::Constant(cube.paths, sq.mean());
                fell_back = true;
            }
        } else {
            const Eigen::VectorXd bw = silverman_bandwidths(X);
            if (!(bw.array() > 0.0).any()) fell_back = true;
            mean_hat = nw_smooth(X, y, X, bw);
            const Eigen::VectorXd sq = (y - mean_hat).array().square();
            var_hat = nw_smooth(X, sq, X, bw);
        }

        for (int p = 0; p < cube.paths; ++p)
            out.surface.im(p, ti) = quantile_z * std::sqrt(std::max(var_hat[p], 0.0));
        fallbacks[tix] = fell_back ? 1 : 0;
    });

    for (int ti = 0; ti < T; ++ti) out.fallback_count += fallbacks[static_cast<std::size_t>(ti)];
    out.pricer_calls = counter.count();
    return out;
}

}  // namespace chebdim
