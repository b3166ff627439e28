// Command-line front end: `chebdim run` executes a configured experiment,
// `chebdim compare` re-renders the report tables from a saved summary csv.
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebdim/run_config.hpp"
#include "chebdim/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev-tensor dynamic initial margin toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string methods_csv;
    std::string out_dir;
    long long seed = -1;
    int paths = 0;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "simulate scenarios and compute margin profiles");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed, "override the simulation seed");
    run->add_option("--paths", paths, "override the path count");
    run->add_option("--out", out_dir, "override the output directory");
    run->add_option("--methods", methods_csv, "comma-separated method list override");
    run->add_option("--threads", threads, "override the worker thread count");

    std::string summary_path;
    CLI::App* compare = app.add_subcommand("compare", "print report tables from a summary csv");
    compare->add_option("--summary", summary_path, "summary.csv produced by a run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            chebdim::ConfigOverrides overrides;
            if (run->count("--seed") > 0) {
                if (seed < 0) throw std::invalid_argument("--seed must be >= 0");
                overrides.seed = static_cast<std::uint64_t>(seed);
            }
            if (run->count("--paths") > 0) overrides.paths = paths;
            if (run->count("--out") > 0) overrides.out_dir = out_dir;
            if (run->count("--methods") > 0) overrides.methods = split_csv(methods_csv);
            if (run->count("--threads") > 0) overrides.threads = threads;
            const chebdim::RunConfig config = chebdim::load_run_config(config_path, overrides);
            chebdim::run_experiment(config, std::cout);
        } else {
            const chebdim::RunSummary summary = chebdim::load_summary_csv(summary_path);
            std::cout << chebdim::render_report(summary);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
