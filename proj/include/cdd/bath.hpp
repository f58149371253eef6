// bath.hpp: ohmic finite-temperature boson baths and their correlation functions
//
// Channel 1 couples to sigma_z (dephasing), channel 2 to sigma_x (bit flip),
// channel 3 to sigma_+/sigma_- (dissipation). The qubit environments are
// identical and mutually uncorrelated, so one correlation matrix serves both.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cdd/errors.hpp"
#include "cdd/trigamma.hpp"

namespace cdd {

using CorrelationMatrix = Eigen::Matrix3cd;

struct BathConfig {
    std::array<double, 3> eta{1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0};
    double omega_c{1.0};
    double beta{4.799};

    void validate() const {
        for (double e : eta)
            if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("bath strengths must be finite and >= 0");
        if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw ConfigError("omega_c must be positive");
        if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
    }

    // tau_B = beta / pi
    double thermal_correlation_time() const { return beta / std::numbers::pi; }

    double strength(int m) const {
        if (m < 1 || m > 3) throw ArgumentError("bath channel must be 1, 2 or 3, got " + std::to_string(m));
        return eta[static_cast<std::size_t>(m - 1)];
    }

    friend bool operator==(const BathConfig&, const BathConfig&) = default;
};

// J_m(w) = eta_m w exp(-w / omega_c)
inline double spectral_density(int m, double omega, const BathConfig& cfg) {
    if (omega < 0.0) throw ArgumentError("spectral_density: frequency must be >= 0");
    return cfg.strength(m) * omega * std::exp(-omega / cfg.omega_c);
}

// K_m(s) = int_0^inf J_m(w) exp(i w s) dw = eta_m wc^2 / (1 - i wc s)^2
inline std::complex<double> kernel_K(int m, double s, const BathConfig& cfg) {
    const std::complex<double> d{1.0, -cfg.omega_c * s};
    return cfg.strength(m) * cfg.omega_c * cfg.omega_c / (d * d);
}

// L_m(s) = int_0^inf J_m(w) exp(i w s) / (exp(beta w) - 1) dw
//        = (eta_m / beta^2) psi'(1 + 1/(beta wc) - i s / beta)
inline std::complex<double> kernel_L(int m, double s, const BathConfig& cfg) {
    const std::complex<double> z{1.0 + 1.0 / (cfg.beta * cfg.omega_c), -s / cfg.beta};
    return cfg.strength(m) / (cfg.beta * cfg.beta) * trigamma_complex(z);
}

// C_{m,n}(s), s = t - t'. Only (1,1), (1,2), (2,1), (2,2), (3,3) are nonzero.
inline CorrelationMatrix correlation(double s, const BathConfig& cfg) {
    using std::complex;
    const complex<double> i{0.0, 1.0};
    const complex<double> k1 = kernel_K(1, s, cfg), k2 = kernel_K(2, s, cfg), k3 = kernel_K(3, s, cfg);
    const complex<double> l1 = kernel_L(1, s, cfg), l2 = kernel_L(2, s, cfg), l3 = kernel_L(3, s, cfg);

    CorrelationMatrix c = CorrelationMatrix::Zero();
    c(0, 0) = k2 + 2.0 * l2.real() + k3 + 2.0 * l3.real();
    c(0, 1) = i * k3 - 2.0 * l3.imag();
    c(1, 0) = -i * k3 + 2.0 * l3.imag();
    c(1, 1) = k3 + 2.0 * l3.real();
    c(2, 2) = k1 + 2.0 * l1.real();
    return c;
}

} // namespace cdd
