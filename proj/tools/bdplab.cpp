// Command-line laboratory: verification suite, scaling sweeps, the boson-matter
// identity suite and the variational gap sweep, all driven by a flat key=value
// configuration with CLI overrides.

#include "bdp/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

int run(int argc, char** argv) {
    CLI::App app{"bdplab - exact-diagonalization laboratory for Duhamel-product inequalities"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    long long seed = -1;
    int threads = 0;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--out", out_path, "output path (report or CSV)");
    app.add_option("--seed", seed, "random seed override");
    app.add_option("--threads", threads, "OpenMP thread count (0 keeps the runtime default)");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the full verification suite");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "size sweep with scaling-exponent fits");
    CLI::App* cmd_dicke = app.add_subcommand("dicke-suite", "boson-matter identity suite");
    CLI::App* cmd_gap = app.add_subcommand("ahm-gap", "variational free-energy gap sweep");
    for (CLI::App* cmd : {cmd_verify, cmd_sweep, cmd_dicke, cmd_gap}) cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    bdp::SweepConfig config;
    if (!config_path.empty()) config = bdp::load_config_file(config_path);
    if (seed >= 0) config.seed = std::uint64_t(seed);

    auto write_text = [&](const std::string& text) {
        if (out_path.empty()) return;
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw bdp::NumericError("cannot open '" + out_path + "' for writing");
        out << text;
    };

    if (cmd_verify->parsed()) {
        const bdp::VerifyReport report = bdp::run_verify(config);
        const std::string text = report.render();
        std::cout << text;
        write_text(text);
        return report.pass ? 0 : 1;
    }
    if (cmd_sweep->parsed()) {
        if (config.model == "random") config.model = "heisenberg";
        const bdp::SweepResult result = bdp::run_sweep(config);
        std::cout << result.summary();
        bdp::emit_csv(result.rows, out_path.empty() ? "sweep.csv" : out_path);
        return 0;
    }
    if (cmd_dicke->parsed()) {
        if (config.model == "random") config.model = "dicke";
        const bdp::DickeSuiteResult result = bdp::run_dicke_suite(config);
        const std::string text = result.render();
        std::cout << text;
        write_text(text);
        return result.pass ? 0 : 1;
    }
    if (cmd_gap->parsed()) {
        if (config.model == "random") config.model = "heisenberg";
        const bdp::GapSweepResult result = bdp::run_gap_sweep(config);
        std::cout << result.summary();
        if (!out_path.empty()) bdp::emit_csv(result.rows, out_path);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bdp::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
