// qubit_algebra.hpp: 2x2/4x4 complex matrices, embedded Pauli operators, two-qubit states
//
// Basis order for the two-qubit space is (uu, ud, du, dd) where |u> is the +1
// eigenvector of sigma_z. Qubit 1 is the left tensor factor.

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "cdd/errors.hpp"

namespace cdd {

using cplx = std::complex<double>;
using ComplexMat2 = Eigen::Matrix2cd;
using ComplexMat4 = Eigen::Matrix4cd;
using StateVector4 = Eigen::Vector4cd;

inline constexpr cplx I_UNIT{0.0, 1.0};

enum class Axis : int { x = 1, y = 2, z = 3 };

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

inline ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b) {
    ComplexMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// Single-qubit Pauli matrix, m in {1,2,3} for x,y,z.
inline ComplexMat2 pauli2(int m) {
    ComplexMat2 s;
    switch (m) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -I_UNIT, I_UNIT, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw ArgumentError("pauli axis must be 1, 2 or 3, got " + std::to_string(m));
    }
    return s;
}

inline ComplexMat2 pauli2(Axis a) { return pauli2(static_cast<int>(a)); }

namespace detail {

inline const std::array<std::array<ComplexMat4, 3>, 2>& pauli_table() {
    static const auto table = [] {
        std::array<std::array<ComplexMat4, 3>, 2> t;
        const ComplexMat2 id = ComplexMat2::Identity();
        for (int m = 1; m <= 3; ++m) {
            t[0][m - 1] = kron(pauli2(m), id);
            t[1][m - 1] = kron(id, pauli2(m));
        }
        return t;
    }();
    return table;
}

} // namespace detail

// sigma_{k,m}: Pauli matrix m acting on qubit k, embedded in the two-qubit space.
inline const ComplexMat4& pauli(int k, int m) {
    if (k < 1 || k > 2) throw ArgumentError("qubit index must be 1 or 2, got " + std::to_string(k));
    if (m < 1 || m > 3) throw ArgumentError("pauli axis must be 1, 2 or 3, got " + std::to_string(m));
    return detail::pauli_table()[k - 1][m - 1];
}

inline const ComplexMat4& pauli(int k, Axis a) { return pauli(k, static_cast<int>(a)); }

// Pure two-qubit state with unit norm.
class PureState4 {
public:
    explicit PureState4(const StateVector4& amplitudes, double tol = 1e-12) : amp_(amplitudes) {
        if (std::abs(amp_.squaredNorm() - 1.0) > tol)
            throw ArgumentError("pure state is not normalized: |psi|^2 = " +
                                std::to_string(amp_.squaredNorm()));
    }

    const StateVector4& amplitudes() const noexcept { return amp_; }
    cplx operator[](int i) const { return amp_(i); }

private:
    StateVector4 amp_;
};

// cos(theta)|uu> + sin(theta)|dd>
inline PureState4 make_phi(double theta) {
    StateVector4 v(std::cos(theta), 0.0, 0.0, std::sin(theta));
    return PureState4(v);
}

// cos(theta)|ud> + sin(theta)|du>
inline PureState4 make_psi(double theta) {
    StateVector4 v(0.0, std::cos(theta), std::sin(theta), 0.0);
    return PureState4(v);
}

struct DensityDefects {
    double hermiticity{0.0};    // max |rho - rho^dagger|
    double trace_error{0.0};    // |Tr rho - 1|
    double min_eigenvalue{0.0}; // of the Hermitian part
};

inline DensityDefects density_defects(const ComplexMat4& m) {
    DensityDefects d;
    d.hermiticity = max_abs(m - m.adjoint());
    d.trace_error = std::abs(m.trace() - 1.0);
    const ComplexMat4 herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMat4> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

// Two-qubit density matrix. The checked constructor enforces Hermiticity and unit
// trace to 1e-10 and tolerates eigenvalues down to -1e-8, since the second-order
// dynamics is not completely positive.
class DensityMatrix4 {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kNegativityTol = 1e-8;

    explicit DensityMatrix4(const ComplexMat4& m) : mat_(m) {
        const DensityDefects d = density_defects(m);
        if (d.hermiticity > kHermitianTol)
            throw ArgumentError("density matrix is not Hermitian (defect " + std::to_string(d.hermiticity) + ")");
        if (d.trace_error > kTraceTol)
            throw ArgumentError("density matrix trace differs from 1 by " + std::to_string(d.trace_error));
        if (d.min_eigenvalue < -kNegativityTol)
            throw ArgumentError("density matrix has eigenvalue " + std::to_string(d.min_eigenvalue));
    }

    // Wraps an integrator state without validation.
    static DensityMatrix4 unchecked(const ComplexMat4& m) { return DensityMatrix4(m, Unchecked{}); }

    static DensityMatrix4 maximally_mixed() { return DensityMatrix4(ComplexMat4::Identity() / 4.0); }

    const ComplexMat4& mat() const noexcept { return mat_; }
    cplx operator()(int i, int j) const { return mat_(i, j); }

private:
    struct Unchecked {};
    DensityMatrix4(const ComplexMat4& m, Unchecked) : mat_(m) {}

    ComplexMat4 mat_;
};

inline DensityMatrix4 to_density(const PureState4& psi) {
    const StateVector4& v = psi.amplitudes();
    return DensityMatrix4(v * v.adjoint());
}

inline bool is_unitary(const ComplexMat4& u, double tol) {
    return max_abs(u.adjoint() * u - ComplexMat4::Identity()) <= tol;
}

// Interaction picture -> Schrodinger picture: rho = Uc rho_I Uc^dagger.
inline DensityMatrix4 to_schrodinger(const DensityMatrix4& rho_i, const ComplexMat4& uc) {
    if (!is_unitary(uc, 1e-10)) throw ArgumentError("to_schrodinger: control propagator is not unitary");
    return DensityMatrix4::unchecked(uc * rho_i.mat() * uc.adjoint());
}

} // namespace cdd
