// selfcheck.hpp: fast closed-form vs oracle checks shared by `cdd verify` and the acceptance suite

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdd/bath.hpp"
#include "cdd/control.hpp"
#include "cdd/oracles.hpp"
#include "cdd/trigamma.hpp"

namespace cdd::selfcheck {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

inline std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

inline CheckResult decoupling_check() {
    ControlConfig good;
    good.n_x = 2;
    good.n_z = 1;
    good.cycles = 1;
    ControlConfig equal = good;
    equal.n_x = 1;
    const double r_good = decoupling_residual(good);
    const double r_equal = decoupling_residual(equal);
    return {"decoupling condition", r_good <= 1e-6 && r_equal >= 0.1,
            "residual(2,1) = " + sci(r_good) + " (<= 1e-6), residual(1,1) = " + sci(r_equal) + " (>= 0.1)"};
}

// 21 evenly spaced s in [-5, 5] / omega_c.
inline std::vector<double> kernel_grid(const BathConfig& bath) {
    std::vector<double> s;
    for (int i = 0; i <= 20; ++i) s.push_back((-5.0 + 0.5 * i) / bath.omega_c);
    return s;
}

inline CheckResult kernel_check(const BathConfig& bath) {
    double worst_k = 0.0, worst_l = 0.0;
    for (int m = 1; m <= 3; ++m) {
        if (bath.strength(m) == 0.0) continue;
        for (double s : kernel_grid(bath)) {
            const auto k = kernel_K(m, s, bath), kq = oracle::kernel_K_quadrature(m, s, bath);
            const auto l = kernel_L(m, s, bath), lq = oracle::kernel_L_quadrature(m, s, bath);
            worst_k = std::max(worst_k, std::abs(k - kq) / std::abs(kq));
            worst_l = std::max(worst_l, std::abs(l - lq) / std::abs(lq));
        }
    }
    return {"kernel closed forms vs quadrature", worst_k <= 1e-8 && worst_l <= 1e-6,
            "max rel err K = " + sci(worst_k) + " (<= 1e-8), L = " + sci(worst_l) + " (<= 1e-6)"};
}

// 20 arguments spread over the right half-plane, including the strip the bath uses.
inline std::vector<std::complex<double>> trigamma_points() {
    std::vector<std::complex<double>> z;
    for (int i = 0; i < 20; ++i) {
        const double re = 0.1 + 0.37 * i;
        const double im = 2.5 * std::sin(1.3 * i) - 0.2 * i;
        z.emplace_back(re, im);
    }
    return z;
}

inline CheckResult trigamma_check() {
    double worst = 0.0;
    for (auto z : trigamma_points()) {
        const auto a = trigamma_complex(z), b = oracle::trigamma_series(z);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    return {"trigamma vs direct series", worst <= 1e-12, "max rel err trigamma = " + sci(worst) + " (<= 1e-12)"};
}

} // namespace cdd::selfcheck
