// Acceptance gate: every shipped guarantee checked end to end, one PASS/FAIL
// line per criterion. Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chebdim/chebyshev.hpp"
#include "chebdim/convergence.hpp"
#include "chebdim/dim_methods.hpp"
#include "chebdim/run_config.hpp"
#include "chebdim/runner.hpp"

using namespace chebdim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << v;
    return out.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "chebdim_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string config_path(const char* name) {
    return std::string(CONFIG_DIR) + "/" + name;
}

const SummaryRow& row_of(const RunSummary& summary, const std::string& trade,
                         const std::string& method, const std::string& kind) {
    for (const SummaryRow& row : summary.rows)
        if (row.trade == trade && row.method == method && row.profile_kind == kind) return row;
    throw std::runtime_error("summary row missing: " + trade + "/" + method + "/" + kind);
}

double error_of(const RunSummary& summary, const std::string& trade, const std::string& method,
                const std::string& kind) {
    const SummaryRow& row = row_of(summary, trade, method, kind);
    if (!row.error) throw std::runtime_error("summary row lacks an error: " + trade + "/" + method);
    return *row.error;
}

// Dense random polynomial of per-dimension degrees, exactly representable on
// any grid with more points than the degree.
struct RandomPoly {
    std::vector<int> degrees;
    std::vector<double> coeffs;

    static RandomPoly draw(std::mt19937_64& rng, const std::vector<int>& degrees) {
        RandomPoly p;
        p.degrees = degrees;
        std::size_t n = 1;
        for (int d : degrees) n *= static_cast<std::size_t>(d + 1);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        p.coeffs.resize(n);
        for (double& c : p.coeffs) c = unit(rng);
        return p;
    }

    double operator()(const Eigen::VectorXd& x) const {
        const int d = static_cast<int>(degrees.size());
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        double total = 0.0;
        for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
            double term = coeffs[flat];
            for (int k = 0; k < d; ++k)
                term *= std::pow(x[k], idx[static_cast<std::size_t>(k)]);
            total += term;
            for (int k = d - 1; k >= 0; --k) {
                if (++idx[static_cast<std::size_t>(k)] <= degrees[static_cast<std::size_t>(k)])
                    break;
                idx[static_cast<std::size_t>(k)] = 0;
            }
        }
        return total;
    }
};

// --- criterion 1: node exactness and polynomial reproduction -----------------

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0x1234abcd);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    int cases = 0;
    int node_mismatches = 0;
    int poly_failures = 0;

    while (cases < 1200) {
        const int d = 1 + static_cast<int>(rng() % 3);
        std::vector<int> degrees, counts;
        std::vector<Interval> ivs;
        for (int k = 0; k < d; ++k) {
            const int max_degree = d == 1 ? 6 : d == 2 ? 4 : 2;
            const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
            degrees.push_back(deg);
            counts.push_back(std::max(2, deg + 1 + static_cast<int>(rng() % 3)));
            const double lo = 4.0 * unit(rng);
            ivs.emplace_back(lo, lo + 0.25 + 3.0 * std::abs(unit(rng)));
        }
        const RandomPoly poly = RandomPoly::draw(rng, degrees);
        const ChebyshevGrid grid{HyperRectangle{ivs}, counts};
        const ChebyshevTensor tensor =
            build_tensor([&](const Eigen::VectorXd& x) { return poly(x); }, grid);

        double scale = 1e-12;
        for (Eigen::Index i = 0; i < tensor.values().size(); ++i)
            scale = std::max(scale, std::abs(tensor.values()[i]));

        // Node exactness must hold bit for bit at every grid node.
        for (std::size_t flat = 0; flat < grid.size(); ++flat)
            if (eval_nd(tensor, grid.node(flat)) !=
                tensor.values()[static_cast<Eigen::Index>(flat)])
                ++node_mismatches;

        // Polynomial reproduction to 1e-12 relative at interior probes.
        for (int probe = 0; probe < 4; ++probe) {
            Eigen::VectorXd x(d);
            for (int k = 0; k < d; ++k)
                x[k] = ivs[static_cast<std::size_t>(k)].from_unit(unit(rng));
            if (std::abs(eval_nd(tensor, x) - poly(x)) > 1e-12 * scale) ++poly_failures;
        }
        ++cases;
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = node_mismatches == 0 && poly_failures == 0 && seconds < 10.0;
    report(1, "barycentric node exactness and polynomial reproduction", ok,
           std::to_string(cases) + " randomized cases, " + std::to_string(node_mismatches) +
               " node mismatches, " + std::to_string(poly_failures) + " probe failures, " +
               fmt(seconds) + " s");
}

// --- criterion 2: geometric convergence for exp ------------------------------

void criterion_2() {
    const auto f = [](const Eigen::VectorXd& x) { return std::exp(x[0]); };
    const std::vector<int> counts = {2, 4, 6, 8, 10, 12, 14, 20};
    const ConvergenceReport rep =
        convergence_study(f, HyperRectangle{Interval{-1.0, 1.0}}, counts, 500);

    const double final_error = rep.max_abs_errors.back();

    // Least-squares line through (count, log error) above the rounding floor.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (rep.max_abs_errors[i] > 1e-13) {
            xs.push_back(static_cast<double>(counts[i]));
            ys.push_back(std::log(rep.max_abs_errors[i]));
        }
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (static_cast<double>(n) * sxy - sx * sy) /
                         (static_cast<double>(n) * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / static_cast<double>(n);
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        ss_res += std::pow(ys[i] - (intercept + slope * xs[i]), 2);
        ss_tot += std::pow(ys[i] - mean_y, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;

    const bool ok = final_error < 1e-12 && slope < -1.0 && r2 > 0.99 && n >= 5;
    report(2, "geometric convergence for exp on [-1, 1]", ok,
           "error at 20 points " + fmt(final_error) + ", slope " + fmt(slope) + ", R^2 " +
               fmt(r2));
}

// --- criterion 3: evaluation call count --------------------------------------

void criterion_3() {
    const auto f = [](const Eigen::VectorXd& x) { return std::exp(0.3 * x.sum()); };
    const ChebyshevGrid grid{
        HyperRectangle{Interval{-1.0, 1.0}, Interval{-1.0, 1.0}, Interval{-1.0, 1.0}},
        {10, 10, 10}};
    const ChebyshevTensor tensor = build_tensor(f, grid);
    Eigen::VectorXd q(3);
    q << 0.17, -0.56, 0.89;
    barycentric_call_count() = 0;
    eval_nd(tensor, q);
    const std::uint64_t calls = barycentric_call_count();
    report(3, "three-dimensional evaluation uses 100 + 10 + 1 barycentric calls", calls == 111,
           std::to_string(calls) + " calls");
}

// --- criteria 4/8: desk-scale swap profiles and determinism ------------------

RunSummary run_shipped(const char* config_name, const fs::path& out_dir, unsigned threads) {
    ConfigOverrides overrides;
    overrides.out_dir = out_dir.string();
    overrides.threads = threads;
    const RunConfig config = load_run_config(config_path(config_name), overrides);
    std::ostringstream log;
    return run_experiment(config, log);
}

void criterion_4(const fs::path& scratch) {
    const auto start = std::chrono::steady_clock::now();
    const RunSummary summary = run_shipped("desk_scale_swap.ini", scratch / "swap", 2);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const double model_eim = error_of(summary, "swap10y", method_name::model_space, "eim");
    const double model_q95 = error_of(summary, "swap10y", method_name::model_space, "q95");
    const double market_eim = error_of(summary, "swap10y", method_name::market_space, "eim");
    const double market_q95 = error_of(summary, "swap10y", method_name::market_space, "q95");

    const bool ok = model_eim <= 1e-4 && model_q95 <= 1e-3 && market_eim <= 1e-2 &&
                    market_q95 <= 1e-2 && seconds < 300.0;
    report(4, "swap margin profiles at 1000 paths x 10 times", ok,
           "model eim " + fmt(model_eim) + " q95 " + fmt(model_q95) + "; market eim " +
               fmt(market_eim) + " q95 " + fmt(market_q95) + "; " + fmt(seconds) + " s");
}

// --- criteria 5/6: swaption profiles and cost accounting ---------------------

void criterion_5_and_6(const fs::path& scratch) {
    const RunSummary summary = run_shipped("desk_scale_swaption.ini", scratch / "swaption", 2);
    const std::vector<std::string> trades = {"swaption_atm", "swaption_itm", "swaption_otm"};
    const std::vector<std::string> kinds = {"eim", "q95"};

    bool accuracy_ok = true;
    bool ordering_ok = true;
    double worst_model = 0.0, worst_market = 0.0;
    for (const std::string& trade : trades)
        for (const std::string& kind : kinds) {
            const double model = error_of(summary, trade, method_name::model_space, kind);
            const double market = error_of(summary, trade, method_name::market_space, kind);
            const double poly = error_of(summary, trade, method_name::regression_poly, kind);
            const double nw = error_of(summary, trade, method_name::regression_nw, kind);
            worst_model = std::max(worst_model, model);
            worst_market = std::max(worst_market, market);
            accuracy_ok = accuracy_ok && model <= 1e-2 && market <= 1e-1;
            ordering_ok = ordering_ok && poly > model && poly > market && nw > model &&
                          nw > market;
        }
    report(5, "swaption margin profiles and regression ordering", accuracy_ok && ordering_ok,
           "worst model " + fmt(worst_model) + ", worst market " + fmt(worst_market) +
               ", regressions strictly worse: " + (ordering_ok ? "yes" : "no"));

    // Cost accounting: measured counts must equal the closed-form identities
    // and form the 100:10:1 chain per trade (1000 paths, 8 times, 7 factors,
    // 10x10 model mesh, 10-point market mesh).
    bool counts_ok = true;
    std::uint64_t brute = 0, model = 0, market = 0, regression = 0;
    for (const std::string& trade : trades) {
        brute = row_of(summary, trade, method_name::brute_force, "eim").pricer_calls;
        model = row_of(summary, trade, method_name::model_space, "eim").pricer_calls;
        market = row_of(summary, trade, method_name::market_space, "eim").pricer_calls;
        regression = row_of(summary, trade, method_name::regression_poly, "eim").pricer_calls;
        counts_ok = counts_ok && brute == 2ull * 7 * 1000 * 8 && model == 8ull * 100 * 2 * 7 &&
                    market == 8ull * 7 * 10 * 2 && regression == 2ull * 1000 * 8;
        counts_ok = counts_ok && brute >= 10 * model && model >= 10 * market;
    }

    // Full-scale direction by formula: 10,000 paths, 30 times, 10 rate
    // pillars, one model dimension, 10-point meshes. Both interpolation
    // methods price two orders of magnitude less than the regressions.
    const std::uint64_t full_regression = 2ull * 10000 * 30;
    const std::uint64_t full_model = 30ull * 10 * 2 * 10;
    const std::uint64_t full_market = 30ull * 10 * 10 * 2;
    const bool full_ok =
        full_model * 100 <= full_regression && full_market * 100 <= full_regression;

    report(6, "pricer-call accounting and cost chain", counts_ok && full_ok,
           "brute " + std::to_string(brute) + " = 10 x " + std::to_string(model) + " = 100 x " +
               std::to_string(market) + "; regression " + std::to_string(regression) +
               "; full-scale formula " + (full_ok ? "holds" : "fails"));
}

// --- criterion 7: degenerate equivalence --------------------------------------

void criterion_7() {
    HullWhiteParams hw;
    hw.mean_reversion = 0.15;
    hw.vol = 0.0;
    hw.initial_rate = 0.035;
    hw.long_term_level = 0.04;
    SabrParams sabr;
    sabr.initial_vol = 0.25;
    sabr.vol_of_vol = 0.0;
    sabr.beta = 0.5;
    sabr.correlation = -0.3;
    PillarConfig pillars;
    pillars.swap_tenors = {1.0, 2.0, 3.0, 5.0, 7.0, 10.0};
    pillars.vol_expiries = {1.0};
    const ScenarioCube cube = simulate(hw, sabr, pillars, 16, {0.25, 0.5, 0.75}, 2024, 2);

    SimmConfig simm;
    simm.delta_risk_weights = Eigen::VectorXd::Constant(6, 0.005);
    simm.rate_correlations = SimmConfig::power_decay_correlations(6, 0.5);
    simm.vol_pillar_count = 1;
    simm.vega_risk_weight = 0.2;
    const BumpConfig bumps;

    SwapTrade swap;
    swap.notional = 1e6;
    swap.fixed_rate = 0.04;
    swap.maturity = 10.0;
    swap.direction = PayReceive::payer;
    SwaptionTrade opt;
    opt.notional = 1e6;
    opt.strike = 0.04;
    opt.expiry = 1.0;
    opt.underlying_tenor = 5.0;
    opt.direction = PayReceive::payer;

    int mismatches = 0;
    int nonzero_regressions = 0;
    for (const Trade& trade : {Trade{swap}, Trade{opt}}) {
        const DimResult brute = brute_force_dim(cube, trade, bumps, simm, 2);
        const DimResult model = model_space_dim(cube, trade, {4, 4}, bumps, simm, 2);
        const DimResult market = market_space_dim(cube, trade, 6, bumps, simm, 2);
        for (int p = 0; p < cube.paths; ++p)
            for (int ti = 0; ti < cube.time_count(); ++ti) {
                if (model.surface.im(p, ti) != brute.surface.im(p, ti)) ++mismatches;
                if (market.surface.im(p, ti) != brute.surface.im(p, ti)) ++mismatches;
            }
        for (RegressionKind kind :
             {RegressionKind::polynomial, RegressionKind::nadaraya_watson}) {
            const RegressionResult reg = regression_dim(cube, trade, kind, 10.0 / 252.0, 2.326, 2);
            for (int p = 0; p < cube.paths; ++p)
                for (int ti = 0; ti < cube.time_count(); ++ti)
                    if (reg.surface.im(p, ti) != 0.0) ++nonzero_regressions;
        }
    }
    report(7, "zero-volatility runs collapse onto the benchmark",
           mismatches == 0 && nonzero_regressions == 0,
           std::to_string(mismatches) + " surface mismatches, " +
               std::to_string(nonzero_regressions) + " nonzero regression margins");
}

// --- criterion 8: byte-identical outputs across thread counts ----------------

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("acceptance: cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// The summary's wall_time_ms column measures elapsed time and is the one
// field allowed to differ between reruns; everything else must match.
std::string strip_wall_column(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto cut = line.rfind(',');
        out << (cut == std::string::npos ? line : line.substr(0, cut)) << '\n';
    }
    return out.str();
}

void criterion_8(const fs::path& scratch) {
    run_shipped("desk_scale_swap.ini", scratch / "det1", 1);
    run_shipped("desk_scale_swap.ini", scratch / "det4", 4);

    int differing = 0;
    std::vector<std::string> names = {"swap10y_surface.csv", "swap10y_profiles.csv",
                                      "swap10y_plot_eim.csv", "swap10y_plot_q95.csv"};
    for (const std::string& name : names)
        if (read_file(scratch / "det1" / name) != read_file(scratch / "det4" / name))
            ++differing;

    const bool summary_match = strip_wall_column(read_file(scratch / "det1" / "summary.csv")) ==
                               strip_wall_column(read_file(scratch / "det4" / "summary.csv"));
    report(8, "csv outputs are byte-identical at 1 and 4 worker threads",
           differing == 0 && summary_match,
           std::to_string(differing) + " data files differ; summary (timing column aside) " +
               (summary_match ? "matches" : "differs"));
}

}  // namespace

int main() {
    const fs::path scratch = scratch_dir();
    const auto guarded = [](int number, const char* label, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(number, label, false, std::string("exception: ") + e.what());
        }
    };

    guarded(1, "barycentric node exactness and polynomial reproduction", [] { criterion_1(); });
    guarded(2, "geometric convergence for exp on [-1, 1]", [] { criterion_2(); });
    guarded(3, "three-dimensional evaluation uses 100 + 10 + 1 barycentric calls",
            [] { criterion_3(); });
    guarded(4, "swap margin profiles at 1000 paths x 10 times", [&] { criterion_4(scratch); });
    guarded(5, "swaption margin profiles, regression ordering, cost accounting",
            [&] { criterion_5_and_6(scratch); });
    guarded(7, "zero-volatility runs collapse onto the benchmark", [] { criterion_7(); });
    guarded(8, "csv outputs are byte-identical at 1 and 4 worker threads",
            [&] { criterion_8(scratch); });

    std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) +
                  " criteria failed")
              << "\n";
    fs::remove_all(scratch);
    return g_failures == 0 ? 0 : 1;
}
