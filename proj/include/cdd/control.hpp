// control.hpp: continuous decoupling propagator, control field and Bloch rotations
//
// Times are in the caller's units; the runner works in units of 1/omega_c.

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cdd/errors.hpp"
#include "cdd/quadrature.hpp"
#include "cdd/qubit_algebra.hpp"

namespace cdd {

using RotationMatrix3 = Eigen::Matrix3d;
using FieldVector3 = Eigen::Vector3d;

struct ControlConfig {
    int n_x{2};
    int n_z{1};
    int cycles{0};           // N; 0 means the control field is off
    double tau{2.0 * std::numbers::pi};  // protection horizon
    // Qubit splitting. Cancelled exactly by a static z field, so it never enters
    // the dynamics; kept for provenance only.
    double omega0{0.0};

    bool enabled() const noexcept { return cycles > 0; }
    double period() const { return tau / static_cast<double>(cycles); }
    double angular_frequency() const { return 2.0 * std::numbers::pi / period(); }

    // Throws ConfigError unless the first-order decoupling condition can hold.
    void validate() const {
        if (cycles < 0) throw ConfigError("N must be >= 0");
        if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
        if (cycles >= 1) {
            if (n_x == 0 || n_z == 0) throw ConfigError("decoupling requires nonzero n_x and n_z");
            if (n_x == n_z) throw ConfigError("decoupling requires n_x != n_z");
        }
    }

    friend bool operator==(const ControlConfig&, const ControlConfig&) = default;
};

// exp(-i angle sigma) for a Pauli matrix sigma.
inline ComplexMat2 pauli_exp(double angle, const ComplexMat2& sigma) {
    return std::cos(angle) * ComplexMat2::Identity() - I_UNIT * std::sin(angle) * sigma;
}

// U_k(t) = exp(-i 2 pi n_x t / t_c sigma_x) exp(-i 2 pi n_z t / t_c sigma_z)
inline ComplexMat2 u_single(const ControlConfig& cfg, double t) {
    if (!cfg.enabled()) return ComplexMat2::Identity();
    const double phase = 2.0 * std::numbers::pi * t / cfg.period();
    return pauli_exp(cfg.n_x * phase, pauli2(Axis::x)) * pauli_exp(cfg.n_z * phase, pauli2(Axis::z));
}

inline ComplexMat4 u_control(const ControlConfig& cfg, double t) {
    const ComplexMat2 u = u_single(cfg, t);
    return kron(u, u);
}

// R(t) with U^dagger sigma_m U = sum_n R(m, n) sigma_n.
inline RotationMatrix3 rotation(const ControlConfig& cfg, double t) {
    if (!cfg.enabled()) return RotationMatrix3::Identity();
    const ComplexMat2 u = u_single(cfg, t);
    RotationMatrix3 r;
    for (int m = 1; m <= 3; ++m) {
        const ComplexMat2 rotated = u.adjoint() * pauli2(m) * u;
        for (int n = 1; n <= 3; ++n) {
            const cplx tr = 0.5 * (pauli2(n) * rotated).trace();
            if (std::abs(tr.imag()) > 1e-8)
                throw ConsistencyError("rotation: imaginary Pauli-basis coefficient " + std::to_string(tr.imag()));
            r(m - 1, n - 1) = tr.real();
        }
    }
    return r;
}

// Field Omega(t) such that H_c = Omega . (sigma_1 + sigma_2) generates u_control.
// The transverse component rotates at 2 n_x omega: exp(-i a sigma_x) sigma_z
// exp(+i a sigma_x) = cos(2a) sigma_z - sin(2a) sigma_y with a = n_x omega t.
inline FieldVector3 omega_field(const ControlConfig& cfg, double t) {
    if (!cfg.enabled()) return FieldVector3::Zero();
    const double w = cfg.angular_frequency();
    const double arg = 2.0 * cfg.n_x * w * t;
    return FieldVector3(cfg.n_x * w, -cfg.n_z * w * std::sin(arg), cfg.n_z * w * std::cos(arg));
}

// Frobenius norm of the period average of R(t). Vanishes iff the first-order
// average of the system-bath coupling over one cycle vanishes.
inline double decoupling_residual(const ControlConfig& cfg, std::size_t panels = 4096) {
    if (!cfg.enabled()) throw ConfigError("decoupling_residual requires N >= 1");
    const double tc = cfg.period();
    const RotationMatrix3 avg = quad::simpson([&](double t) { return rotation(cfg, t); }, 0.0, tc, panels) / tc;
    return avg.norm();
}

} // namespace cdd
