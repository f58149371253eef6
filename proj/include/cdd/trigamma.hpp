// trigamma.hpp: first polygamma function for complex arguments in the right half-plane

#pragma once

#include <array>
#include <complex>
#include <string>

#include "cdd/errors.hpp"

namespace cdd {

// psi'(z) for Re z > 0. Upward recurrence psi'(z) = psi'(z + 1) + 1/z^2 until
// Re z >= 10, then the asymptotic series with Bernoulli numbers B2..B12.
inline std::complex<double> trigamma_complex(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw DomainError("trigamma_complex: Re z must be positive, got " + std::to_string(z.real()));

    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 10.0) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }

    static constexpr std::array<double, 6> bernoulli{
        1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};

    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    // Horner in 1/z^2 from the smallest term up.
    std::complex<double> tail{0.0, 0.0};
    for (auto it = bernoulli.rbegin(); it != bernoulli.rend(); ++it) tail = (*it + tail) * inv2;
    const std::complex<double> series = inv + 0.5 * inv2 + tail * inv;
    return shift + series;
}

} // namespace cdd
