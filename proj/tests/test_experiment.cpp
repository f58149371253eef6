#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace cdd;
using namespace cdd::test;
namespace fs = std::filesystem;

namespace {

std::size_t parse_error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::vector<std::string> data_lines(const fs::path& p) {
    std::ifstream f(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(f, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
    return out;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("cdd_test_" + name)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.n_list = {0, 2};
    cfg.states = {{Family::phi, pi / 4.0}, {Family::psi, pi / 8.0}};
    cfg.steps_per_period = 32;
    cfg.sample_every = 8;
    return cfg;
}

} // namespace

TEST(Units, DerivedQuantities) {
    const ExperimentConfig cfg;
    EXPECT_NEAR(cfg.omega_c(), 2.0 * pi * 1e10, 1e-3);
    EXPECT_NEAR(cfg.beta_omega_c(), 4.7992429931, 1e-9);
    EXPECT_NEAR(cfg.control(3).tau, 2.0 * pi, 1e-15);
    EXPECT_NEAR(cfg.control(3).period(), 2.0 * pi / 3.0, 1e-15);
    EXPECT_EQ(cfg.bath().omega_c, 1.0);
    EXPECT_EQ(cfg.bath().eta, cfg.eta);
}

TEST(ParseConfig, EmptyDocumentGivesDefaults) {
    EXPECT_EQ(parse_config(""), ExperimentConfig{});
    EXPECT_EQ(parse_config("# only a comment\n\n   \n"), ExperimentConfig{});
}

TEST(ParseConfig, ReadsEveryKey) {
    const ExperimentConfig cfg = parse_config(
        "n_x = 3   # transverse\n"
        "n_z = -1\n"
        "N_list = 1, 4\n"
        "tau_seconds = 2e-10\n"
        "T_kelvin = 0.05\n"
        "eta1 = 0.1\n"
        "eta2 = 0.01\n"
        "eta3 = 0\n"
        "states = phi:pi/4 ; psi:3*pi/8; phi:-pi; psi:0.25\n"
        "steps_per_period = 64\n"
        "sample_every = 16\n"
        "out_dir = results/run 1\n"
        "jobs = 2\n");
    EXPECT_EQ(cfg.n_x, 3);
    EXPECT_EQ(cfg.n_z, -1);
    EXPECT_EQ(cfg.n_list, (std::vector<int>{1, 4}));
    EXPECT_EQ(cfg.tau_seconds, 2e-10);
    EXPECT_EQ(cfg.t_kelvin, 0.05);
    EXPECT_EQ(cfg.eta, (std::array<double, 3>{0.1, 0.01, 0.0}));
    ASSERT_EQ(cfg.states.size(), 4u);
    EXPECT_EQ(cfg.states[0], (StateSpec{Family::phi, pi / 4.0}));
    EXPECT_EQ(cfg.states[1], (StateSpec{Family::psi, 3.0 * pi / 8.0}));
    EXPECT_EQ(cfg.states[2], (StateSpec{Family::phi, -pi}));
    EXPECT_EQ(cfg.states[3], (StateSpec{Family::psi, 0.25}));
    EXPECT_EQ(cfg.steps_per_period, 64);
    EXPECT_EQ(cfg.sample_every, 16);
    EXPECT_EQ(cfg.out_dir, "results/run 1");
    EXPECT_EQ(cfg.jobs, 2);
}

TEST(ParseConfig, EmptyListsAreAllowed) {
    const ExperimentConfig cfg = parse_config("N_list =\nstates =\n");
    EXPECT_TRUE(cfg.n_list.empty());
    EXPECT_TRUE(cfg.states.empty());
}

TEST(ParseConfig, EqualIndicesRejectedWithLine) {
    EXPECT_EQ(parse_error_line("n_x = 1\nn_z = 1\n"), 2u);
    EXPECT_EQ(parse_error_line("n_x = 1\nn_z = 1\nN_list = 2\n"), 3u);
    // With only the free run requested the indices are never used.
    EXPECT_NO_THROW(parse_config("n_x = 1\nn_z = 1\nN_list = 0\n"));
}

TEST(ParseConfig, SyntaxErrorsCarryLine) {
    EXPECT_EQ(parse_error_line("n_x = 2\nN = 2\n"), 2u);
    EXPECT_EQ(parse_error_line("n_x = two\n"), 1u);
    EXPECT_EQ(parse_error_line("\n\nn_z = 1.5\n"), 3u);
    EXPECT_EQ(parse_error_line("tau_seconds = 1e-10x\n"), 1u);
    EXPECT_EQ(parse_error_line("n_x = 2\nn_x = 3\n"), 2u);
    EXPECT_EQ(parse_error_line("just words\n"), 1u);
    EXPECT_EQ(parse_error_line("eta1 =\n"), 1u);
    EXPECT_EQ(parse_error_line("states = phi\n"), 1u);
    EXPECT_EQ(parse_error_line("states = chi:0.1\n"), 1u);
    EXPECT_EQ(parse_error_line("states = phi:pi/0\n"), 1u);
    EXPECT_EQ(parse_error_line("states = phi:2pi\n"), 1u);
    EXPECT_EQ(parse_error_line("N_list = 1,,2\n"), 1u);
}

TEST(ParseConfig, RangeErrorsCarryLine) {
    EXPECT_EQ(parse_error_line("T_kelvin = 0\n"), 1u);
    EXPECT_EQ(parse_error_line("n_x = 2\ntau_seconds = -1\n"), 2u);
    EXPECT_EQ(parse_error_line("eta2 = -0.1\n"), 1u);
    EXPECT_EQ(parse_error_line("N_list = 0,-1\n"), 1u);
    EXPECT_EQ(parse_error_line("steps_per_period = 30\nsample_every = 4\n"), 2u);
    EXPECT_EQ(parse_error_line("steps_per_period = 15\n"), 1u);
    EXPECT_EQ(parse_error_line("jobs = -2\n"), 1u);
}

TEST(ParseConfig, AngleForms) {
    EXPECT_DOUBLE_EQ(detail::parse_angle("pi", 1), pi);
    EXPECT_DOUBLE_EQ(detail::parse_angle("-pi", 1), -pi);
    EXPECT_DOUBLE_EQ(detail::parse_angle("pi/8", 1), pi / 8.0);
    EXPECT_DOUBLE_EQ(detail::parse_angle("7*pi/4", 1), 7.0 * pi / 4.0);
    EXPECT_DOUBLE_EQ(detail::parse_angle("0.5 * pi", 1), 0.5 * pi);
    EXPECT_DOUBLE_EQ(detail::parse_angle("0.785", 1), 0.785);
}

TEST(ParseConfig, RenderRoundTrips) {
    EXPECT_EQ(parse_config(render_config(ExperimentConfig{})), ExperimentConfig{});
    for (int trial = 0; trial < 50; ++trial) {
        ExperimentConfig cfg;
        cfg.n_x = static_cast<int>(uniform(1, 6));
        cfg.n_z = cfg.n_x + 1 + static_cast<int>(uniform(0, 3));
        if (uniform(0, 1) < 0.5) cfg.n_z = -cfg.n_z;
        cfg.n_list.clear();
        for (int i = 0, n = static_cast<int>(uniform(0, 5)); i < n; ++i)
            cfg.n_list.push_back(static_cast<int>(uniform(0, 20)));
        cfg.tau_seconds = uniform(1e-12, 1e-8);
        cfg.t_kelvin = uniform(1e-3, 10.0);
        for (double& e : cfg.eta) e = uniform(0.0, 0.2);
        cfg.states.clear();
        for (int i = 0, n = static_cast<int>(uniform(0, 6)); i < n; ++i)
            cfg.states.push_back({uniform(0, 1) < 0.5 ? Family::phi : Family::psi, uniform(-4.0, 4.0)});
        cfg.steps_per_period = 16 * static_cast<int>(uniform(1, 10));
        cfg.sample_every = 8;
        cfg.out_dir = "dir" + std::to_string(trial);
        cfg.jobs = static_cast<int>(uniform(0, 8));
        EXPECT_EQ(parse_config(render_config(cfg)), cfg) << render_config(cfg);
    }
}

TEST(Runner, SweepOrderingAndDeterminism) {
    ExperimentConfig cfg = small_config();
    cfg.n_list = {2, 0};
    cfg.states = {{Family::psi, pi / 8.0}, {Family::phi, pi / 4.0}};
    const auto one = run_sweep(cfg, 1);
    const auto three = run_sweep(cfg, 3);
    ASSERT_EQ(one.size(), 4u);
    ASSERT_EQ(three.size(), 4u);
    const std::vector<std::pair<int, Family>> order{
        {0, Family::phi}, {0, Family::psi}, {2, Family::phi}, {2, Family::psi}};
    for (std::size_t i = 0; i < one.size(); ++i) {
        ASSERT_TRUE(one[i].ok()) << one[i].error;
        EXPECT_EQ(one[i].cycles, order[i].first);
        EXPECT_EQ(one[i].state.family, order[i].second);
        EXPECT_EQ(one[i].cycles, three[i].cycles);
        EXPECT_EQ(one[i].record->final_state, three[i].record->final_state);
    }
}

TEST(Runner, EmptySweep) {
    ExperimentConfig cfg = small_config();
    cfg.n_list.clear();
    EXPECT_TRUE(run_sweep(cfg).empty());
    EXPECT_THROW(write_csv({}, cfg, fs::temp_directory_path() / "cdd_never_written"), ArgumentError);
}

TEST(Runner, FailuresAreCapturedPerTrajectory) {
    ExperimentConfig cfg = small_config();
    cfg.eta = {16.0, 4.0, 1.0};
    const auto results = run_sweep(cfg, 2);
    ASSERT_FALSE(results.empty());
    bool any_failed = false;
    for (const auto& r : results) any_failed |= !r.ok();
    EXPECT_TRUE(any_failed);
    for (const auto& r : results)
        if (!r.ok()) {
            EXPECT_FALSE(r.error.empty());
        }
}

TEST(Csv, FilenamesFollowPattern) {
    EXPECT_EQ(trajectory_filename(3, {Family::phi, pi / 4.0}), "run_N3_phi785.csv");
    EXPECT_EQ(trajectory_filename(0, {Family::psi, 3.0 * pi / 8.0}), "run_N0_psi1178.csv");
    EXPECT_EQ(trajectory_filename(8, {Family::psi, 7.0 * pi / 4.0}), "run_N8_psi5498.csv");
}

TEST(Csv, TrajectoryFilesHaveExpectedShape) {
    const ExperimentConfig cfg = small_config();
    const TempDir dir("shape");
    const auto results = run_sweep(cfg, 1);
    write_csv(results, cfg, dir.path);

    for (const auto& r : results) {
        const fs::path p = dir.path / trajectory_filename(r.cycles, r.state);
        ASSERT_TRUE(fs::exists(p)) << p;
        const auto lines = data_lines(p);
        ASSERT_FALSE(lines.empty());
        EXPECT_EQ(lines[0], kTrajectoryHeader);
        const std::size_t steps = 32u * static_cast<std::size_t>(std::max(r.cycles, 1));
        EXPECT_EQ(lines.size() - 1, steps / 8u + 1u);

        const auto first = split_csv(lines[1]);
        ASSERT_EQ(first.size(), 7u);
        EXPECT_EQ(std::stod(first[0]), 0.0);
        EXPECT_NEAR(std::stod(first[4]), 1.0, 1e-14);
        EXPECT_NEAR(std::stod(first[2]), std::abs(std::sin(2.0 * r.state.theta)), 1e-12);

        const auto last = split_csv(lines.back());
        EXPECT_NEAR(std::stod(last[0]), cfg.tau_seconds, 1e-22);
        EXPECT_NEAR(std::stod(last[1]), std::max(r.cycles, 1), 1e-12);
        EXPECT_NEAR(std::stod(last[3]), std::max(0.0, std::stod(last[2])), 0.0);

        const std::string text = slurp(p);
        EXPECT_NE(text.find("# N = " + std::to_string(r.cycles) + "\n"), std::string::npos);
        EXPECT_NE(text.find("# beta_omega_c = "), std::string::npos);
        EXPECT_EQ(text.find("out_dir"), std::string::npos);
    }
}

TEST(Csv, SummaryListsEveryRun) {
    const ExperimentConfig cfg = small_config();
    const TempDir dir("summary");
    const auto results = run_sweep(cfg, 1);
    write_csv(results, cfg, dir.path);
    const auto lines = data_lines(dir.path / "summary.csv");
    ASSERT_EQ(lines.size(), results.size() + 1);
    EXPECT_EQ(lines[0], kSummaryHeader);
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto cells = split_csv(lines[i + 1]);
        ASSERT_EQ(cells.size(), 6u);
        EXPECT_EQ(std::stoi(cells[0]), results[i].cycles);
        EXPECT_EQ(cells[1], to_string(results[i].state.family));
        EXPECT_EQ(std::stod(cells[2]), results[i].state.theta);
        EXPECT_EQ(std::stod(cells[3]), results[i].record->samples.back().lambda);
        EXPECT_EQ(std::stod(cells[4]), results[i].record->samples.back().fidelity);
        EXPECT_EQ(cells[5], "ok");
    }
}

TEST(Csv, FailedRunsAppearOnlyInSummary) {
    ExperimentConfig cfg = small_config();
    cfg.eta = {16.0, 4.0, 1.0};
    const TempDir dir("failed");
    const auto results = run_sweep(cfg, 1);
    write_csv(results, cfg, dir.path);
    const std::string summary = slurp(dir.path / "summary.csv");
    for (const auto& r : results)
        EXPECT_EQ(fs::exists(dir.path / trajectory_filename(r.cycles, r.state)), r.ok());
    EXPECT_NE(summary.find("nan,nan,\"error: "), std::string::npos);
}

TEST(Csv, OutputIsByteIdenticalAcrossRunsAndJobCounts) {
    const ExperimentConfig cfg = small_config();
    const TempDir a("det_a");
    const TempDir b("det_b");
    write_csv(run_sweep(cfg, 1), cfg, a.path);
    write_csv(run_sweep(cfg, 4), cfg, b.path);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
        ++files;
        EXPECT_EQ(slurp(entry.path()), slurp(b.path / entry.path().filename())) << entry.path();
    }
    EXPECT_EQ(files, 5u);
}

TEST(Csv, UnwritableDirectoryIsIoError) {
    const ExperimentConfig cfg = small_config();
    const TempDir dir("blocked");
    fs::create_directories(dir.path);
    std::ofstream(dir.path / "file") << "x";
    const auto results = run_sweep(cfg, 1);
    EXPECT_THROW(write_csv(results, cfg, dir.path / "file" / "sub"), IoError);
}
