// redfield.hpp: time-dependent Redfield coefficients and the second-order master equation
//
//   D(t)       = R(t)^T  int_0^t C(t - t') R(t') dt'
//   d rho / dt = sum_k sum_pq D_pq [s_kp, rho s_kq] + D*_pq [s_kq rho, s_kp]
//
// The bath correlation is stationary, so C is tabulated once per run on the
// time-difference grid and R once on the absolute-time grid. Every D(t) is then
// a weighted sum of table products.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cdd/bath.hpp"
#include "cdd/control.hpp"
#include "cdd/errors.hpp"
#include "cdd/metrics.hpp"
#include "cdd/quadrature.hpp"
#include "cdd/qubit_algebra.hpp"

namespace cdd {

using RedfieldCoefficients = Eigen::Matrix3cd;

enum class QuadratureRule { simpson };

struct IntegratorConfig {
    int steps_per_period{0};       // 0 selects 64 * max(|n_x|, |n_z|)
    int quadrature_refinement{1};  // memory-integral nodes per half step
    QuadratureRule rule{QuadratureRule::simpson};
    double conservation_tol{1e-8};

    int resolved_steps_per_period(const ControlConfig& cfg) const {
        if (steps_per_period != 0) return steps_per_period;
        return 64 * std::max({std::abs(cfg.n_x), std::abs(cfg.n_z), 1});
    }

    void validate(const ControlConfig& cfg) const {
        const int spp = resolved_steps_per_period(cfg);
        if (spp < 16 || spp % 2 != 0) throw ConfigError("steps per period must be even and >= 16");
        if (quadrature_refinement < 1) throw ConfigError("quadrature refinement must be >= 1");
        if (!(conservation_tol > 0.0)) throw ConfigError("conservation tolerance must be positive");
    }

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

// Tables of R(j h) and C(k h) for j, k = 0 .. size-1.
class MemoryKernelCache {
public:
    MemoryKernelCache(const ControlConfig& control, const BathConfig& bath, double spacing, std::size_t points)
        : control_(control), spacing_(spacing) {
        if (!(spacing > 0.0)) throw ConfigError("memory grid spacing must be positive");
        rotations_.reserve(points);
        correlations_.reserve(points);
        for (std::size_t j = 0; j < points; ++j) {
            const double t = static_cast<double>(j) * spacing;
            rotations_.push_back(rotation(control, t));
            correlations_.push_back(correlation(t, bath));
        }
    }

    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return rotations_.size(); }
    const ControlConfig& control() const noexcept { return control_; }
    const RotationMatrix3& rotation_at(std::size_t j) const { return rotations_.at(j); }
    const CorrelationMatrix& correlation_at(std::size_t k) const { return correlations_.at(k); }

    // D at t = i * spacing.
    RedfieldCoefficients coefficients_at(std::size_t i) const {
        if (i >= size()) throw ConfigError("memory grid does not reach the requested time");
        if (i == 0) return RedfieldCoefficients::Zero();

        // G = int C(t - t') R(t') dt'. C is zero outside the (x,y) block and (z,z).
        Eigen::Matrix<cplx, 3, 3> g = Eigen::Matrix<cplx, 3, 3>::Zero();
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = quad::uniform_weight(j, i);
            const CorrelationMatrix& c = correlations_[i - j];
            const RotationMatrix3& r = rotations_[j];
            for (int q = 0; q < 3; ++q) {
                g(0, q) += w * (c(0, 0) * r(0, q) + c(0, 1) * r(1, q));
                g(1, q) += w * (c(1, 0) * r(0, q) + c(1, 1) * r(1, q));
                g(2, q) += w * (c(2, 2) * r(2, q));
            }
        }
        g *= spacing_;
        return rotations_[i].transpose().cast<cplx>() * g;
    }

private:
    ControlConfig control_;
    double spacing_;
    std::vector<RotationMatrix3> rotations_;
    std::vector<CorrelationMatrix> correlations_;
};

// D(t) for t on the cache grid.
inline RedfieldCoefficients coefficients(double t, const MemoryKernelCache& grid) {
    if (t < 0.0) throw ArgumentError("coefficients: t must be >= 0");
    const double h = grid.spacing();
    const double pos = t / h;
    const auto i = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(i)) > 1e-9 * std::max(1.0, pos))
        throw ConfigError("coefficients: t = " + std::to_string(t) + " is not a grid node");
    const ControlConfig& cfg = grid.control();
    if (cfg.enabled() && t > cfg.period() / 4.0 && i + 1 < 16)
        throw ConfigError("coefficients: fewer than 16 quadrature nodes on [0, t]");
    return grid.coefficients_at(i);
}

// Right-hand side of the master equation for both qubits.
inline ComplexMat4 master_rhs(const ComplexMat4& rho, const RedfieldCoefficients& d) {
    ComplexMat4 out = ComplexMat4::Zero();
    for (int k = 1; k <= 2; ++k) {
        std::array<ComplexMat4, 3> rho_s;  // rho s_q
        std::array<ComplexMat4, 3> s_rho;  // s_q rho
        for (int q = 0; q < 3; ++q) {
            rho_s[q] = rho * pauli(k, q + 1);
            s_rho[q] = pauli(k, q + 1) * rho;
        }
        for (int p = 0; p < 3; ++p) {
            ComplexMat4 z = ComplexMat4::Zero();  // sum_q D_pq rho s_q
            ComplexMat4 w = ComplexMat4::Zero();  // sum_q D*_pq s_q rho
            for (int q = 0; q < 3; ++q) {
                z += d(p, q) * rho_s[q];
                w += std::conj(d(p, q)) * s_rho[q];
            }
            const ComplexMat4& sp = pauli(k, p + 1);
            out += sp * z - z * sp;
            out += w * sp - sp * w;
        }
    }
    return out;
}

inline ComplexMat4 master_rhs(const DensityMatrix4& rho, const RedfieldCoefficients& d) {
    return master_rhs(rho.mat(), d);
}

struct TrajectorySample {
    double t{0.0};
    double lambda{0.0};
    double concurrence{0.0};
    double fidelity{0.0};
    double purity{0.0};
    double trace_error{0.0};
    double hermiticity_error{0.0};
    double min_eigenvalue{0.0};
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::size_t total_steps{0};
    double step{0.0};
    ComplexMat4 final_state{ComplexMat4::Zero()};
    // Set when an eigenvalue of rho_I drops below -1e-4.
    bool born_violation{false};
    double worst_eigenvalue{0.0};
};

namespace detail {

inline TrajectorySample measure(double t, const ComplexMat4& rho_i, const DensityMatrix4& rho0,
                                const ControlConfig& cfg) {
    TrajectorySample s;
    s.t = t;
    const DensityDefects d = density_defects(rho_i);
    s.trace_error = d.trace_error;
    s.hermiticity_error = d.hermiticity;
    s.min_eigenvalue = d.min_eigenvalue;
    const DensityMatrix4 interaction = DensityMatrix4::unchecked(rho_i);
    const DensityMatrix4 lab = to_schrodinger(interaction, u_control(cfg, t));
    s.lambda = lambda_value(lab);
    s.concurrence = std::max(0.0, s.lambda);
    s.fidelity = fidelity(interaction, rho0);
    s.purity = purity(interaction);
    return s;
}

} // namespace detail

// Fixed-step RK4 over [0, tau] with D refreshed at every stage time. Records a
// sample every `sample_every` steps plus t = 0 and t = tau.
inline TrajectoryRecord evolve(const DensityMatrix4& rho0, const ControlConfig& cfg, const BathConfig& bath,
                               const IntegratorConfig& icfg, int sample_every) {
    icfg.validate(cfg);
    if (sample_every < 1) throw ConfigError("sample_every must be >= 1");

    const auto steps = static_cast<std::size_t>(icfg.resolved_steps_per_period(cfg)) *
                       static_cast<std::size_t>(std::max(cfg.cycles, 1));
    const double dt = cfg.tau / static_cast<double>(steps);
    const auto nodes_per_step = static_cast<std::size_t>(2 * icfg.quadrature_refinement);
    const MemoryKernelCache grid(cfg, bath, dt / static_cast<double>(nodes_per_step), nodes_per_step * steps + 1);

    TrajectoryRecord rec;
    rec.total_steps = steps;
    rec.step = dt;

    ComplexMat4 rho = rho0.mat();
    const double diverge_tol = 100.0 * icfg.conservation_tol;
    auto record = [&](std::size_t n) {
        TrajectorySample s = detail::measure(static_cast<double>(n) * dt, rho, rho0, cfg);
        if (s.min_eigenvalue < -1e-4) rec.born_violation = true;
        rec.worst_eigenvalue = std::min(rec.worst_eigenvalue, s.min_eigenvalue);
        rec.samples.push_back(s);
    };

    record(0);
    RedfieldCoefficients d_start = RedfieldCoefficients::Zero();
    const auto every = static_cast<std::size_t>(sample_every);
    for (std::size_t n = 0; n < steps; ++n) {
        const std::size_t base = n * nodes_per_step;
        const RedfieldCoefficients d_mid = grid.coefficients_at(base + nodes_per_step / 2);
        const RedfieldCoefficients d_end = grid.coefficients_at(base + nodes_per_step);

        const ComplexMat4 k1 = master_rhs(rho, d_start);
        const ComplexMat4 k2 = master_rhs(ComplexMat4(rho + 0.5 * dt * k1), d_mid);
        const ComplexMat4 k3 = master_rhs(ComplexMat4(rho + 0.5 * dt * k2), d_mid);
        const ComplexMat4 k4 = master_rhs(ComplexMat4(rho + dt * k3), d_end);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        d_start = d_end;

        const double trace_err = std::abs(rho.trace() - 1.0);
        const double herm_err = max_abs(rho - rho.adjoint());
        if (!std::isfinite(trace_err) || !std::isfinite(herm_err) || trace_err > diverge_tol || herm_err > diverge_tol)
            throw IntegrationDiverged("conservation lost at step " + std::to_string(n + 1) + ": trace error " +
                                      std::to_string(trace_err) + ", hermiticity defect " + std::to_string(herm_err));

        const std::size_t done = n + 1;
        if (done % every == 0 || done == steps) record(done);
    }
    rec.final_state = rho;
    return rec;
}

} // namespace cdd
