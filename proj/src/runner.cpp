#include "chebdim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chebdim/dim_methods.hpp"
#include "chebdim/kvfile.hpp"

namespace chebdim {

namespace {

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
    return out;
}

struct MethodOutcome {
    std::string method;
    DimSurface surface;
    DimProfile profile;
    std::uint64_t pricer_calls = 0;
    double wall_ms = 0.0;
    int fallbacks = 0;
};

MethodOutcome run_method(const std::string& method, const RunConfig& config,
                         const ScenarioCube& cube, const Trade& trade) {
    MethodOutcome out;
    out.method = method;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (method == method_name::brute_force) {
            DimResult r = brute_force_dim(cube, trade, config.bumps, config.simm, config.threads);
            out.surface = std::move(r.surface);
            out.pricer_calls = r.sens.pricer_calls;
        } else if (method == method_name::model_space) {
            DimResult r = model_space_dim(cube, trade, config.model_mesh, config.bumps,
                                          config.simm, config.threads);
            out.surface = std::move(r.surface);
            out.pricer_calls = r.sens.pricer_calls;
        } else if (method == method_name::market_space) {
            DimResult r = market_space_dim(cube, trade, config.market_mesh, config.bumps,
                                           config.simm, config.threads);
            out.surface = std::move(r.surface);
            out.pricer_calls = r.sens.pricer_calls;
        } else if (method == method_name::regression_poly || method == method_name::regression_nw) {
            const RegressionKind kind = method == method_name::regression_poly
                                            ? RegressionKind::polynomial
                                            : RegressionKind::nadaraya_watson;
            RegressionResult r =
                regression_dim(cube, trade, kind, config.regression_horizon_years(),
                               config.simm.quantile_z, config.threads);
            out.surface = std::move(r.surface);
            out.pricer_calls = r.pricer_calls;
            out.fallbacks = r.fallback_count;
        } else {
            throw std::invalid_argument("unknown method");
        }
    } catch (const std::exception& e) {
        throw std::runtime_error("method '" + method + "' failed: " + e.what());
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    out.profile = profiles(out.surface);
    return out;
}

void write_surface_csv(const std::string& path, const ScenarioCube& cube,
                       const std::vector<MethodOutcome>& outcomes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot write '" + path + "'");
    out << "path,time,im,method\n";
    for (const MethodOutcome& mo : outcomes)
        for (int p = 0; p < cube.paths; ++p)
            for (int ti = 0; ti < cube.time_count(); ++ti)
                out << p << ',' << full(cube.time_points[static_cast<std::size_t>(ti)]) << ','
                    << full(mo.surface.im(p, ti)) << ',' << mo.method << '\n';
}

void write_profiles_csv(const std::string& path, const ScenarioCube& cube,
                        const std::vector<MethodOutcome>& outcomes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot write '" + path + "'");
    out << "time,eim,q95,method\n";
    for (const MethodOutcome& mo : outcomes)
        for (int ti = 0; ti < cube.time_count(); ++ti)
            out << full(cube.time_points[static_cast<std::size_t>(ti)]) << ','
                << full(mo.profile.eim[ti]) << ',' << full(mo.profile.q95[ti]) << ',' << mo.method
                << '\n';
}

void write_plot_csv(const std::string& path, const ScenarioCube& cube,
                    const std::vector<MethodOutcome>& outcomes, bool q95) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot write '" + path + "'");
    out << "time";
    for (const MethodOutcome& mo : outcomes) out << ',' << mo.method;
    out << '\n';
    for (int ti = 0; ti < cube.time_count(); ++ti) {
        out << full(cube.time_points[static_cast<std::size_t>(ti)]);
        for (const MethodOutcome& mo : outcomes)
            out << ',' << full(q95 ? mo.profile.q95[ti] : mo.profile.eim[ti]);
        out << '\n';
    }
}

}  // namespace

RunSummary run_experiment(const RunConfig& config, std::ostream& log) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);

    log << "simulating " << config.paths << " paths x " << config.time_points.size()
        << " time points (seed " << config.seed << ", " << config.threads << " thread"
        << (config.threads == 1 ? "" : "s") << ")\n";
    const ScenarioCube cube = simulate(config.hw, config.sabr, config.pillars, config.paths,
                                       config.time_points, config.seed, config.threads);

    if (config.export_cube) {
        const std::string path = config.out_dir + "/cube.csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("run: cannot write '" + path + "'");
        export_cube_csv(cube, out);
        log << "wrote " << path << "\n";
    }

    RunSummary summary;
    for (const NamedTrade& named : config.trades) {
        log << "trade " << named.name << "\n";
        std::vector<MethodOutcome> outcomes;
        for (const std::string& method : config.methods) {
            MethodOutcome mo = run_method(method, config, cube, named.trade);
            log << "  " << method << ": " << mo.pricer_calls << " pricer calls, "
                << static_cast<long long>(mo.wall_ms) << " ms";
            if (mo.fallbacks > 0)
                log << " (fell back to the unconditional variance at " << mo.fallbacks
                    << " time points)";
            log << "\n";
            outcomes.push_back(std::move(mo));
        }

        const MethodOutcome* benchmark = nullptr;
        for (const MethodOutcome& mo : outcomes)
            if (mo.method == method_name::brute_force) benchmark = &mo;

        for (const MethodOutcome& mo : outcomes) {
            SummaryRow eim_row{named.name, mo.method, "eim", std::nullopt, 0,
                               mo.pricer_calls, mo.wall_ms};
            SummaryRow q95_row{named.name, mo.method, "q95", std::nullopt, 0,
                               mo.pricer_calls, mo.wall_ms};
            if (benchmark && &mo != benchmark) {
                const ProfileErrorStats eim =
                    profile_error(benchmark->profile.eim, mo.profile.eim);
                const ProfileErrorStats q95 =
                    profile_error(benchmark->profile.q95, mo.profile.q95);
                eim_row.error = eim.error;
                eim_row.skipped = eim.skipped;
                q95_row.error = q95.error;
                q95_row.skipped = q95.skipped;
            }
            summary.rows.push_back(std::move(eim_row));
            summary.rows.push_back(std::move(q95_row));
        }

        const std::string stem = config.out_dir + "/" + sanitize(named.name);
        write_surface_csv(stem + "_surface.csv", cube, outcomes);
        write_profiles_csv(stem + "_profiles.csv", cube, outcomes);
        write_plot_csv(stem + "_plot_eim.csv", cube, outcomes, false);
        write_plot_csv(stem + "_plot_q95.csv", cube, outcomes, true);
        log << "  wrote " << stem << "_{surface,profiles,plot_eim,plot_q95}.csv\n";
    }

    write_summary_csv(summary, config.out_dir + "/summary.csv");
    log << "wrote " << config.out_dir << "/summary.csv\n";
    log << render_report(summary);
    return summary;
}

void write_summary_csv(const RunSummary& summary, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot write '" + path + "'");
    out << "trade,method,profile_kind,error,skipped,pricer_calls,wall_time_ms\n";
    for (const SummaryRow& row : summary.rows) {
        out << row.trade << ',' << row.method << ',' << row.profile_kind << ','
            << (row.error ? full(*row.error) : std::string()) << ',' << row.skipped << ','
            << row.pricer_calls << ',' << full(row.wall_time_ms) << '\n';
    }
}

RunSummary load_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("compare: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line != "trade,method,profile_kind,error,skipped,pricer_calls,wall_time_ms")
        throw std::runtime_error("compare: '" + path + "' is not a summary csv");
    RunSummary summary;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < 7) cells.emplace_back();
        if (cells.size() != 7)
            throw std::runtime_error("compare: '" + path + "' line " + std::to_string(line_no) +
                                     ": expected 7 fields");
        SummaryRow row;
        row.trade = cells[0];
        row.method = cells[1];
        row.profile_kind = cells[2];
        if (!cells[3].empty())
            row.error = parse_double_field(cells[3], path + ": error");
        row.skipped = static_cast<int>(parse_int_field(cells[4], path + ": skipped"));
        row.pricer_calls =
            static_cast<std::uint64_t>(parse_int_field(cells[5], path + ": pricer_calls"));
        row.wall_time_ms = parse_double_field(cells[6], path + ": wall_time_ms");
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

std::string render_report(const RunSummary& summary) {
    std::ostringstream out;
    char buf[256];

    out << "\nAccuracy (mean relative profile error vs benchmark)\n";
    std::snprintf(buf, sizeof(buf), "%-14s %-18s %12s %12s %8s\n", "trade", "method", "eim", "q95",
                  "skipped");
    out << buf;
    struct Acc {
        std::optional<double> eim, q95;
        int skipped = 0;
    };
    std::vector<std::pair<std::pair<std::string, std::string>, Acc>> acc_rows;
    for (const SummaryRow& row : summary.rows) {
        const auto key = std::make_pair(row.trade, row.method);
        auto it = std::find_if(acc_rows.begin(), acc_rows.end(),
                               [&](const auto& r) { return r.first == key; });
        if (it == acc_rows.end()) {
            acc_rows.push_back({key, {}});
            it = std::prev(acc_rows.end());
        }
        if (row.profile_kind == "eim") it->second.eim = row.error;
        if (row.profile_kind == "q95") it->second.q95 = row.error;
        it->second.skipped = std::max(it->second.skipped, row.skipped);
    }
    for (const auto& [key, acc] : acc_rows) {
        std::string eim = acc.eim ? std::string() : "-";
        if (acc.eim) {
            std::snprintf(buf, sizeof(buf), "%.3e", *acc.eim);
            eim = buf;
        }
        std::string q95 = acc.q95 ? std::string() : "-";
        if (acc.q95) {
            std::snprintf(buf, sizeof(buf), "%.3e", *acc.q95);
            q95 = buf;
        }
        std::snprintf(buf, sizeof(buf), "%-14s %-18s %12s %12s %8d\n", key.first.c_str(),
                      key.second.c_str(), eim.c_str(), q95.c_str(), acc.skipped);
        out << buf;
    }

    out << "\nCost (pricer calls, wall time)\n";
    std::snprintf(buf, sizeof(buf), "%-14s %-30s %14s %12s\n", "trade", "method", "pricer_calls",
                  "wall_ms");
    out << buf;
    for (const auto& [key, acc] : acc_rows) {
        std::uint64_t calls = 0;
        double wall = 0.0;
        for (const SummaryRow& row : summary.rows)
            if (row.trade == key.first && row.method == key.second) {
                calls = row.pricer_calls;
                wall = row.wall_time_ms;
            }
        const bool benchmark = key.second == method_name::brute_force;
        const std::string label = benchmark ? key.second + " (Benchmark)" : key.second;
        std::snprintf(buf, sizeof(buf), "%-14s %-30s %14llu %12.1f\n", key.first.c_str(),
                      label.c_str(), static_cast<unsigned long long>(calls), wall);
        out << buf;
    }
    return out.str();
}

}  // namespace chebdim
