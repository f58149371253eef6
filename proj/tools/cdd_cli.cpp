// cdd_cli.cpp: command-line entry point (run / verify / defaults)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cdd/cdd.hpp"
#include "cdd/selfcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTrajectoryFailure = 1;
constexpr int kExitConfigError = 2;

int cmd_defaults() {
    std::cout << cdd::render_config(cdd::ExperimentConfig{});
    return kExitOk;
}

int cmd_verify() {
    using namespace cdd::selfcheck;
    const cdd::BathConfig bath = cdd::ExperimentConfig{}.bath();
    bool all = true;
    for (const CheckResult& r : {decoupling_check(), kernel_check(bath), trigamma_check()}) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
    }
    return all ? kExitOk : kExitTrajectoryFailure;
}

int cmd_run(const std::string& config_path, const std::string& out_override, int jobs) {
    cdd::ExperimentConfig cfg;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config " << config_path << '\n';
                return kExitConfigError;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        cfg = cdd::parse_config(text);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (jobs >= 0) cfg.jobs = jobs;
    } catch (const cdd::ParseError& e) {
        std::cerr << "config error: " << (config_path.empty() ? "<defaults>" : config_path) << ": " << e.what() << '\n';
        return kExitConfigError;
    }

    const auto results = cdd::run_sweep(cfg);
    if (results.empty()) {
        std::cout << "empty sweep: nothing to run\n";
        return kExitOk;
    }
    try {
        cdd::write_csv(results, cfg, cfg.out_dir);
    } catch (const cdd::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitTrajectoryFailure;
    }

    bool failed = false;
    std::printf("%4s %-6s %12s %14s %14s  %s\n", "N", "family", "theta", "lambda(tau)", "F(tau)", "status");
    for (const auto& r : results) {
        if (r.ok()) {
            const auto& end = r.record->samples.back();
            std::printf("%4d %-6s %12.6f %14.9f %14.9f  ok%s\n", r.cycles, std::string(cdd::to_string(r.state.family)).c_str(),
                        r.state.theta, end.lambda, end.fidelity,
                        r.record->born_violation ? " (warning: eigenvalue below -1e-4)" : "");
        } else {
            failed = true;
            std::printf("%4d %-6s %12.6f %14s %14s  failed: %s\n", r.cycles,
                        std::string(cdd::to_string(r.state.family)).c_str(), r.state.theta, "-", "-", r.error.c_str());
        }
    }
    std::cout << "wrote " << results.size() << " trajectories to " << cfg.out_dir << '\n';
    return failed ? kExitTrajectoryFailure : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit entanglement under continuous dynamical decoupling"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int jobs = -1;
    auto* run = app.add_subcommand("run", "Run the configured sweep and write CSV output");
    run->add_option("--config", config_path, "key = value config file (defaults if omitted)");
    run->add_option("--out", out_dir, "Output directory (overrides out_dir)");
    run->add_option("--jobs", jobs, "Concurrent trajectories (0: all cores)")->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "Decoupling and kernel self-checks");
    auto* defaults = app.add_subcommand("defaults", "Print the default config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    if (*run) return cmd_run(config_path, out_dir, jobs);
    if (*verify) return cmd_verify();
    if (*defaults) return cmd_defaults();
    return kExitConfigError;
}
