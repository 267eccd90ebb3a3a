#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oqsinfo/sweep.hpp"

namespace {

// Flag values are kept as strings and funneled through the same
// key = value handler as the config file, so both syntaxes stay in step.
struct FlagOverrides {
    std::optional<std::string> model, regime, omega, gamma, lambda;
    std::optional<std::string> t_start, t_stop, t_step;
    std::optional<std::string> grid_half_width, grid_points, out;
};

void add_common_options(CLI::App& cmd, std::string& config_path, FlagOverrides& flags) {
    cmd.add_option("--config", config_path, "flat key = value config file");
    cmd.add_option("--model", flags.model, "ho or moshinsky");
    cmd.add_option("--regime", flags.regime, "dephasing or relaxation");
    cmd.add_option("--omega", flags.omega, "trap frequency (atomic units)");
    cmd.add_option("--gamma", flags.gamma, "bath coupling, comma-separated list");
    cmd.add_option("--lambda", flags.lambda, "interparticle strength, comma-separated list");
    cmd.add_option("--t-start", flags.t_start, "first time point");
    cmd.add_option("--t-stop", flags.t_stop, "last time point");
    cmd.add_option("--t-step", flags.t_step, "time step");
    cmd.add_option("--grid-half-width", flags.grid_half_width, "grid extent L for [-L, L]");
    cmd.add_option("--grid-points", flags.grid_points, "odd points per grid axis");
    cmd.add_option("--out", flags.out, "output CSV path (default stdout)");
}

oqsinfo::RunConfig build_config(const std::string& config_path, const FlagOverrides& flags) {
    oqsinfo::RunConfig config;
    if (!config_path.empty()) {
        config = oqsinfo::load_config_file(config_path);
    }
    auto apply = [&](const char* key, const std::optional<std::string>& value) {
        if (value) oqsinfo::apply_config_entry(config, key, *value);
    };
    apply("model", flags.model);
    apply("regime", flags.regime);
    apply("omega", flags.omega);
    apply("gamma", flags.gamma);
    apply("lambda", flags.lambda);
    apply("t_start", flags.t_start);
    apply("t_stop", flags.t_stop);
    apply("t_step", flags.t_step);
    apply("grid_half_width", flags.grid_half_width);
    apply("grid_points", flags.grid_points);
    apply("out", flags.out);
    return config;
}

int run_with_output(const oqsinfo::RunConfig& config,
                    const std::function<int(const oqsinfo::RunConfig&, std::ostream&)>& runner) {
    if (config.out.empty()) {
        return runner(config, std::cout);
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file '" + config.out + "'");
    }
    const int code = runner(config, file);
    file.flush();
    if (!file) {
        throw std::runtime_error("failed writing output file '" + config.out + "'");
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Entropy, uncertainty-sum and mutual-information sweeps for two exactly\n"
        "solvable open quantum models: a truncated harmonic oscillator and a\n"
        "two-particle Moshinsky atom under dephasing or relaxation baths."};
    app.require_subcommand(1);

    std::string config_path;
    FlagOverrides flags;

    CLI::App* time_sweep = app.add_subcommand(
        "time-sweep", "information measures on a time grid, per (gamma, lambda)");
    CLI::App* lambda_sweep = app.add_subcommand(
        "lambda-sweep", "entropy sums against the coupling at fixed instants");
    CLI::App* density = app.add_subcommand(
        "density", "sampled one-particle position densities at fixed instants");
    for (CLI::App* cmd : {time_sweep, lambda_sweep, density}) {
        add_common_options(*cmd, config_path, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // keep the documented 0/1/2 contract: usage problems exit 1,
        // --help stays 0
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const oqsinfo::RunConfig config = build_config(config_path, flags);
        if (time_sweep->parsed()) {
            return run_with_output(config, oqsinfo::run_time_sweep);
        }
        if (lambda_sweep->parsed()) {
            return run_with_output(config, oqsinfo::run_lambda_sweep);
        }
        return run_with_output(config, oqsinfo::emit_density_snapshots);
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
