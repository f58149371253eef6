// oracles.hpp: slow, independent reference computations for self-checks
//
// Nothing here is on the simulation path. Each function reaches its answer by a
// different route than the production code it is compared against: frequency
// quadrature instead of closed-form kernels, direct series instead of the
// asymptotic trigamma, adaptive Gauss-Kronrod instead of the tabulated memory
// integral, and ODE propagation instead of closed-form exponentials.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "cdd/bath.hpp"
#include "cdd/control.hpp"
#include "cdd/qubit_algebra.hpp"

namespace cdd::oracle {

namespace detail {

// Adaptive 61-point Gauss-Kronrod on panels of [a, b]. A tighter tolerance than
// 1e-13 is below the error-estimate noise and only forces needless bisection.
template <class F>
double integrate_panels(F&& f, double a, double b, double width = 1.0) {
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (double lo = a; lo < b; lo += width) {
        const double hi = std::min(lo + width, b);
        total += gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, 1e-13);
    }
    return total;
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, double width = 1.0) {
    const double re = integrate_panels([&](double x) { return f(x).real(); }, a, b, width);
    const double im = integrate_panels([&](double x) { return f(x).imag(); }, a, b, width);
    return {re, im};
}

} // namespace detail

// Upper frequency limit in units of omega_c; the ohmic tail beyond it is below 1e-15.
inline constexpr double kFrequencyCutoffFactor = 40.0;

// int_0^{40 wc} J_m(w) e^{i w s} dw
inline std::complex<double> kernel_K_quadrature(int m, double s, const BathConfig& bath) {
    const double top = kFrequencyCutoffFactor * bath.omega_c;
    return detail::integrate_complex(
        [&](double w) { return spectral_density(m, w, bath) * std::exp(std::complex<double>(0.0, w * s)); }, 0.0,
        top, 0.5 * bath.omega_c);
}

// int_0^{40 wc} J_m(w) e^{i w s} / (e^{beta w} - 1) dw
inline std::complex<double> kernel_L_quadrature(int m, double s, const BathConfig& bath) {
    const double top = kFrequencyCutoffFactor * bath.omega_c;
    return detail::integrate_complex(
        [&](double w) {
            // J(w) / (e^{bw} - 1) -> eta / beta at w = 0
            const double bose = w > 0.0 ? spectral_density(m, w, bath) / std::expm1(bath.beta * w)
                                        : bath.strength(m) / bath.beta;
            return bose * std::exp(std::complex<double>(0.0, w * s));
        },
        0.0, top, 0.5 * bath.omega_c);
}

// sum_{k>=0} 1/(z+k)^2: 4000 explicit terms in long double plus an Euler-Maclaurin
// tail whose truncation error is below 1e-30 at that depth.
inline std::complex<double> trigamma_series(std::complex<double> z) {
    constexpr int terms = 4000;
    std::complex<long double> acc{0.0L, 0.0L};
    const std::complex<long double> zl{z.real(), z.imag()};
    for (int k = terms - 1; k >= 0; --k) {
        const std::complex<long double> w = zl + static_cast<long double>(k);
        acc += 1.0L / (w * w);
    }
    const std::complex<long double> w = zl + static_cast<long double>(terms);
    const std::complex<long double> iw = 1.0L / w;
    const std::complex<long double> iw2 = iw * iw;
    const std::complex<long double> tail =
        iw + 0.5L * iw2 + iw2 * iw / 6.0L - iw2 * iw2 * iw / 30.0L + iw2 * iw2 * iw2 * iw / 42.0L;
    acc += tail;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// int_0^t C(s) ds by adaptive quadrature on the closed-form correlation. Equals
// D(t) when the control is off (R = I).
inline Eigen::Matrix3cd correlation_integral(double t, const BathConfig& bath) {
    Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
    if (t <= 0.0) return out;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            out(m, n) = detail::integrate_complex([&](double s) { return correlation(s, bath)(m, n); }, 0.0, t,
                                                  0.25);
    return out;
}

// exp(-i (a sigma_x)) exp(-i (b sigma_z)) by Pade scaling-and-squaring on each generator.
inline ComplexMat2 u_single_expm(const ControlConfig& cfg, double t) {
    if (!cfg.enabled()) return ComplexMat2::Identity();
    const double phase = 2.0 * std::numbers::pi * t / cfg.period();
    const ComplexMat2 gx = (-I_UNIT * (cfg.n_x * phase)) * pauli2(Axis::x);
    const ComplexMat2 gz = (-I_UNIT * (cfg.n_z * phase)) * pauli2(Axis::z);
    return ComplexMat2(gx.exp()) * ComplexMat2(gz.exp());
}

// Propagate dU/dt = -i Omega(t).sigma U from U(0) = I with fine-step RK4.
inline ComplexMat2 propagate_field(const ControlConfig& cfg, double t_end, int steps) {
    auto gen = [&](double t) {
        const FieldVector3 f = omega_field(cfg, t);
        return ComplexMat2(-I_UNIT * (f(0) * pauli2(1) + f(1) * pauli2(2) + f(2) * pauli2(3)));
    };
    ComplexMat2 u = ComplexMat2::Identity();
    const double h = t_end / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const ComplexMat2 k1 = gen(t) * u;
        const ComplexMat2 k2 = gen(t + 0.5 * h) * (u + 0.5 * h * k1);
        const ComplexMat2 k3 = gen(t + 0.5 * h) * (u + 0.5 * h * k2);
        const ComplexMat2 k4 = gen(t + h) * (u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

// Bloch-vector components of a traceless Hermitian 2x2 matrix read off its entries:
// A = [[z, x - iy], [x + iy, -z]].
inline Eigen::Vector3d pauli_components(const ComplexMat2& a) {
    return {a(1, 0).real(), a(1, 0).imag(), a(0, 0).real()};
}

} // namespace cdd::oracle
