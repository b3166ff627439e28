#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chebdim/run_config.hpp"

namespace chebdim {

/// One summary row per (trade, method, profile kind). The benchmark method
/// carries no error value.
struct SummaryRow {
    std::string trade;
    std::string method;
    std::string profile_kind;  // "eim" or "q95"
    std::optional<double> error;
    int skipped = 0;
    std::uint64_t pricer_calls = 0;
    double wall_time_ms = 0.0;
};

struct RunSummary {
    std::vector<SummaryRow> rows;
};

/// Simulates the cube once, runs every configured method on it for every
/// trade, writes surface / profile / plot CSVs and summary.csv into the
/// output directory, and returns the summary. Progress goes to log.
RunSummary run_experiment(const RunConfig& config, std::ostream& log);

void write_summary_csv(const RunSummary& summary, const std::string& path);
RunSummary load_summary_csv(const std::string& path);

/// Accuracy and cost tables rendered from a summary, benchmark row labeled
/// as such.
std::string render_report(const RunSummary& summary);

}  // namespace chebdim
