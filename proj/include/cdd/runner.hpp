// runner.hpp: sweeps over (N, initial state), concurrent execution and CSV output

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "cdd/errors.hpp"
#include "cdd/experiment.hpp"
#include "cdd/redfield.hpp"

namespace cdd {

struct TrajectoryResult {
    int cycles{0};
    StateSpec state;
    std::optional<TrajectoryRecord> record;
    std::string error;

    bool ok() const noexcept { return record.has_value(); }
};

inline TrajectoryResult run_trajectory(const ExperimentConfig& cfg, int cycles, const StateSpec& state) {
    TrajectoryResult out;
    out.cycles = cycles;
    out.state = state;
    try {
        out.record = evolve(to_density(state.state()), cfg.control(cycles), cfg.bath(), cfg.integrator(),
                            cfg.sample_every);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

// One trajectory per (N, state), ordered by (N, family, theta). `jobs` <= 0 uses
// the hardware concurrency.
inline std::vector<TrajectoryResult> run_sweep(const ExperimentConfig& cfg, int jobs = -1) {
    cfg.validate();
    std::vector<std::pair<int, StateSpec>> tasks;
    for (int n : cfg.n_list)
        for (const auto& s : cfg.states) tasks.emplace_back(n, s);
    std::stable_sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.first, static_cast<int>(a.second.family), a.second.theta) <
               std::tuple(b.first, static_cast<int>(b.second.family), b.second.theta);
    });

    std::vector<TrajectoryResult> results(tasks.size());
    if (jobs < 0) jobs = cfg.jobs;
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), tasks.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
            results[i] = run_trajectory(cfg, tasks[i].first, tasks[i].second);
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return results;
}

inline std::string trajectory_filename(int cycles, const StateSpec& s) {
    return "run_N" + std::to_string(cycles) + "_" + std::string(to_string(s.family)) +
           std::to_string(std::llround(s.theta * 1000.0)) + ".csv";
}

inline constexpr std::string_view kTrajectoryHeader = "t_seconds,t_over_tc,lambda,concurrence,fidelity,purity,trace_error";
inline constexpr std::string_view kSummaryHeader = "N,family,theta_rad,lambda_tau,fidelity_tau,status";

namespace detail {

// "# key = value" block of everything that determines the numbers. The output
// directory and worker count are left out so reruns elsewhere compare equal.
inline std::string metadata_block(const ExperimentConfig& cfg) {
    std::istringstream in(render_config(cfg));
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("out_dir", 0) == 0 || line.rfind("jobs", 0) == 0) continue;
        out += "# " + line + '\n';
    }
    out += "# omega_c_rad_per_s = " + format_double(cfg.omega_c()) + '\n';
    out += "# beta_omega_c = " + format_double(cfg.beta_omega_c()) + '\n';
    return out;
}

inline std::ofstream open_for_write(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + p.string() + " for writing");
    f.imbue(std::locale::classic());
    return f;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace detail

// One CSV per successful trajectory plus summary.csv with the endpoint of every run.
inline void write_csv(const std::vector<TrajectoryResult>& results, const ExperimentConfig& cfg,
                      const std::filesystem::path& dir) {
    if (results.empty()) throw ArgumentError("write_csv: no trajectories to write");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

    const std::string meta = detail::metadata_block(cfg);
    const double omega_c = cfg.omega_c();

    for (const auto& r : results) {
        if (!r.ok()) continue;
        const ControlConfig control = cfg.control(r.cycles);
        // With the control off, time is reported in units of tau.
        const double tc = control.enabled() ? control.period() : control.tau;
        auto f = detail::open_for_write(dir / trajectory_filename(r.cycles, r.state));
        f << meta << "# N = " << r.cycles << '\n'
          << "# family = " << to_string(r.state.family) << '\n'
          << "# theta_rad = " << format_double(r.state.theta) << '\n'
          << kTrajectoryHeader << '\n';
        for (const auto& s : r.record->samples) {
            f << format_double(s.t / omega_c) << ',' << format_double(s.t / tc) << ',' << format_double(s.lambda)
              << ',' << format_double(s.concurrence) << ',' << format_double(s.fidelity) << ','
              << format_double(s.purity) << ',' << format_double(s.trace_error) << '\n';
        }
        if (!f) throw IoError("write failed for " + trajectory_filename(r.cycles, r.state));
    }

    auto f = detail::open_for_write(dir / "summary.csv");
    f << meta << kSummaryHeader << '\n';
    for (const auto& r : results) {
        f << r.cycles << ',' << to_string(r.state.family) << ',' << format_double(r.state.theta) << ',';
        if (r.ok()) {
            const auto& end = r.record->samples.back();
            f << format_double(end.lambda) << ',' << format_double(end.fidelity) << ",ok\n";
        } else {
            f << "nan,nan," << detail::csv_quote("error: " + r.error) << '\n';
        }
    }
    if (!f) throw IoError("write failed for summary.csv");
}

} // namespace cdd
