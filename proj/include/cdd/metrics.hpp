// metrics.hpp: Wootters concurrence, fidelity and purity of two-qubit states

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "cdd/errors.hpp"
#include "cdd/qubit_algebra.hpp"

namespace cdd {

// sigma_y (x) sigma_y
inline const ComplexMat4& spin_flip() {
    static const ComplexMat4 flip = kron(pauli2(Axis::y), pauli2(Axis::y));
    return flip;
}

namespace detail {

inline constexpr double kClampTol = 1e-8;
inline constexpr double kInvalidTol = 1e-6;

// Square roots of the eigenvalues of rho (sy sy) rho* (sy sy), descending.
inline std::array<double, 4> wootters_roots(const ComplexMat4& rho) {
    const ComplexMat4 herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMat4> es(herm);
    std::array<double, 4> roots{};

    if (es.eigenvalues().minCoeff() >= -kClampTol) {
        // Positive rho: the eigenvalues of rho R rho* R are the squared singular
        // values of sqrt(rho) R sqrt(rho)*.
        const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        const ComplexMat4 sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        const ComplexMat4 a = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
        Eigen::JacobiSVD<ComplexMat4> svd(a);
        for (int i = 0; i < 4; ++i) roots[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    } else {
        const ComplexMat4 m = rho * spin_flip() * rho.conjugate() * spin_flip();
        Eigen::ComplexEigenSolver<ComplexMat4> ces(m, false);
        for (int i = 0; i < 4; ++i) {
            const double ev = ces.eigenvalues()(i).real();
            if (ev < -kInvalidTol)
                throw InvalidState("concurrence: spin-flip product has eigenvalue " + std::to_string(ev));
            roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev, 0.0));
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

} // namespace detail

// Lambda = l1 - l2 - l3 - l4; negative values mean a separable state.
inline double lambda_value(const DensityMatrix4& rho) {
    const auto l = detail::wootters_roots(rho.mat());
    return l[0] - l[1] - l[2] - l[3];
}

inline double concurrence(const DensityMatrix4& rho) { return std::max(0.0, lambda_value(rho)); }

// F = Re Tr[rho_I rho0]
inline double fidelity(const DensityMatrix4& rho_i, const DensityMatrix4& rho0) {
    const cplx f = (rho_i.mat() * rho0.mat()).trace();
    if (std::abs(f.imag()) > 1e-8) throw ConsistencyError("fidelity: imaginary overlap " + std::to_string(f.imag()));
    return f.real();
}

inline double purity(const DensityMatrix4& rho) { return (rho.mat() * rho.mat()).trace().real(); }

} // namespace cdd
