// experiment.hpp: experiment configuration, its key = value text format, and unit conversion
//
// Physical inputs (seconds, kelvin) are converted once into the internal units used
// by the simulation: times in 1/omega_c, rates in omega_c, kernels in omega_c^2.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cdd/bath.hpp"
#include "cdd/control.hpp"
#include "cdd/errors.hpp"
#include "cdd/qubit_algebra.hpp"
#include "cdd/redfield.hpp"

namespace cdd {

namespace units {
inline constexpr double hbar = 1.0545718e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K
} // namespace units

enum class Family { phi, psi };

inline std::string_view to_string(Family f) { return f == Family::phi ? "phi" : "psi"; }

struct StateSpec {
    Family family{Family::phi};
    double theta{0.0};

    PureState4 state() const { return family == Family::phi ? make_phi(theta) : make_psi(theta); }

    friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

struct ExperimentConfig {
    int n_x{2};
    int n_z{1};
    std::vector<int> n_list{0, 1, 2, 3, 5, 8};
    double tau_seconds{1e-10};
    double t_kelvin{0.1};
    std::array<double, 3> eta{1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0};
    std::vector<StateSpec> states = default_states();
    int steps_per_period{128};
    int sample_every{4};
    std::string out_dir{"out"};
    int jobs{0}; // 0: hardware concurrency

    // Phi, Psi at pi/8 and 3pi/8, then the four Bell states.
    static std::vector<StateSpec> default_states() {
        constexpr double pi = std::numbers::pi;
        return {{Family::phi, pi / 8}, {Family::phi, 3 * pi / 8}, {Family::psi, pi / 8},
                {Family::psi, 3 * pi / 8}, {Family::phi, pi / 4}, {Family::phi, 7 * pi / 4},
                {Family::psi, pi / 4}, {Family::psi, 7 * pi / 4}};
    }

    // omega_c = 2 pi / tau
    double omega_c() const { return 2.0 * std::numbers::pi / tau_seconds; }
    // beta = hbar / (k_B T), in seconds
    double beta_seconds() const { return units::hbar / (units::k_boltzmann * t_kelvin); }
    double beta_omega_c() const { return beta_seconds() * omega_c(); }

    ControlConfig control(int cycles) const {
        ControlConfig c;
        c.n_x = n_x;
        c.n_z = n_z;
        c.cycles = cycles;
        c.tau = tau_seconds * omega_c();
        return c;
    }

    BathConfig bath() const {
        BathConfig b;
        b.eta = eta;
        b.omega_c = 1.0;
        b.beta = beta_omega_c();
        return b;
    }

    IntegratorConfig integrator() const {
        IntegratorConfig i;
        i.steps_per_period = steps_per_period;
        return i;
    }

    void validate() const {
        if (!(tau_seconds > 0.0) || !std::isfinite(tau_seconds)) throw ConfigError("tau_seconds must be positive");
        if (!(t_kelvin > 0.0) || !std::isfinite(t_kelvin)) throw ConfigError("T_kelvin must be positive");
        for (int n : n_list) {
            if (n < 0) throw ConfigError("N_list entries must be >= 0");
            control(n).validate();
        }
        bath().validate();
        for (const auto& s : states)
            if (!std::isfinite(s.theta)) throw ConfigError("state angles must be finite");
        if (steps_per_period < 16 || steps_per_period % 2 != 0)
            throw ConfigError("steps_per_period must be even and >= 16");
        if (sample_every < 1 || steps_per_period % sample_every != 0)
            throw ConfigError("sample_every must divide steps_per_period");
        if (jobs < 0) throw ConfigError("jobs must be >= 0");
    }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline std::string format_double(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_real(std::string_view v, std::size_t line) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (v.empty() || ec != std::errc() || ptr != end) throw ParseError(line, "not a number: '" + std::string(v) + "'");
    return out;
}

inline int parse_int(std::string_view v, std::size_t line) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (v.empty() || ec != std::errc() || ptr != end) throw ParseError(line, "not an integer: '" + std::string(v) + "'");
    return out;
}

// A real number, or [c*]pi[/d] with optional leading minus.
inline double parse_angle(std::string_view v, std::size_t line) {
    const auto pi_pos = v.find("pi");
    if (pi_pos == std::string_view::npos) return parse_real(v, line);
    double coef = 1.0;
    std::string_view head = trim(v.substr(0, pi_pos));
    if (head == "-") {
        coef = -1.0;
    } else if (!head.empty()) {
        if (head.back() != '*') throw ParseError(line, "bad angle: '" + std::string(v) + "'");
        coef = parse_real(trim(head.substr(0, head.size() - 1)), line);
    }
    std::string_view tail = trim(v.substr(pi_pos + 2));
    double den = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ParseError(line, "bad angle: '" + std::string(v) + "'");
        den = parse_real(trim(tail.substr(1)), line);
        if (den == 0.0) throw ParseError(line, "angle denominator is zero");
    }
    return coef * std::numbers::pi / den;
}

} // namespace detail

// Line-oriented `key = value` document; `#` starts a comment. Missing keys keep
// their defaults. Empty values for N_list and states mean empty lists.
inline ExperimentConfig parse_config(std::string_view text) {
    using namespace detail;
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    std::size_t start = 0;
    std::map<std::string, std::size_t> key_lines;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!key_lines.emplace(key, line_no).second) throw ParseError(line_no, "duplicate key '" + key + "'");

        const bool list_key = key == "N_list" || key == "states";
        if (value.empty() && !list_key) throw ParseError(line_no, "missing value for '" + key + "'");

        if (key == "n_x") cfg.n_x = parse_int(value, line_no);
        else if (key == "n_z") cfg.n_z = parse_int(value, line_no);
        else if (key == "tau_seconds") cfg.tau_seconds = parse_real(value, line_no);
        else if (key == "T_kelvin") cfg.t_kelvin = parse_real(value, line_no);
        else if (key == "eta1") cfg.eta[0] = parse_real(value, line_no);
        else if (key == "eta2") cfg.eta[1] = parse_real(value, line_no);
        else if (key == "eta3") cfg.eta[2] = parse_real(value, line_no);
        else if (key == "steps_per_period") cfg.steps_per_period = parse_int(value, line_no);
        else if (key == "sample_every") cfg.sample_every = parse_int(value, line_no);
        else if (key == "out_dir") cfg.out_dir = std::string(value);
        else if (key == "jobs") cfg.jobs = parse_int(value, line_no);
        else if (key == "N_list") {
            cfg.n_list.clear();
            if (!value.empty())
                for (auto item : split(value, ',')) cfg.n_list.push_back(parse_int(item, line_no));
        } else if (key == "states") {
            cfg.states.clear();
            if (!value.empty()) {
                for (auto item : split(value, ';')) {
                    if (item.empty()) continue;
                    const auto colon = item.find(':');
                    if (colon == std::string_view::npos) throw ParseError(line_no, "state must be family:theta");
                    const std::string_view fam = trim(item.substr(0, colon));
                    StateSpec s;
                    if (fam == "phi") s.family = Family::phi;
                    else if (fam == "psi") s.family = Family::psi;
                    else throw ParseError(line_no, "unknown state family '" + std::string(fam) + "'");
                    s.theta = parse_angle(trim(item.substr(colon + 1)), line_no);
                    cfg.states.push_back(s);
                }
            }
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }

    // Report invariant violations at the line of the last key involved.
    auto line_of = [&](std::initializer_list<std::string_view> keys) {
        std::size_t best = 0;
        for (auto k : keys)
            if (auto it = key_lines.find(std::string(k)); it != key_lines.end()) best = std::max(best, it->second);
        return best == 0 ? line_no : best;
    };
    auto check = [&](std::initializer_list<std::string_view> keys, auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            throw ParseError(line_of(keys), e.what());
        }
    };
    check({"n_x", "n_z", "N_list"}, [&] {
        for (int n : cfg.n_list) {
            if (n < 0) throw ConfigError("N_list entries must be >= 0");
            cfg.control(n).validate();
        }
    });
    check({"tau_seconds", "T_kelvin", "eta1", "eta2", "eta3"}, [&] {
        if (!(cfg.tau_seconds > 0.0) || !std::isfinite(cfg.tau_seconds)) throw ConfigError("tau_seconds must be positive");
        if (!(cfg.t_kelvin > 0.0) || !std::isfinite(cfg.t_kelvin)) throw ConfigError("T_kelvin must be positive");
        cfg.bath().validate();
    });
    check({"steps_per_period", "sample_every", "states", "jobs"}, [&] { cfg.validate(); });
    return cfg;
}

// Inverse of parse_config for valid configs.
inline std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "n_x = " << cfg.n_x << '\n' << "n_z = " << cfg.n_z << '\n' << "N_list = ";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) os << (i ? "," : "") << cfg.n_list[i];
    os << '\n'
       << "tau_seconds = " << format_double(cfg.tau_seconds) << '\n'
       << "T_kelvin = " << format_double(cfg.t_kelvin) << '\n'
       << "eta1 = " << format_double(cfg.eta[0]) << '\n'
       << "eta2 = " << format_double(cfg.eta[1]) << '\n'
       << "eta3 = " << format_double(cfg.eta[2]) << '\n'
       << "states = ";
    for (std::size_t i = 0; i < cfg.states.size(); ++i)
        os << (i ? ";" : "") << to_string(cfg.states[i].family) << ':' << format_double(cfg.states[i].theta);
    os << '\n'
       << "steps_per_period = " << cfg.steps_per_period << '\n'
       << "sample_every = " << cfg.sample_every << '\n'
       << "out_dir = " << cfg.out_dir << '\n'
       << "jobs = " << cfg.jobs << '\n';
    return os.str();
}

} // namespace cdd
