// quadrature.hpp: composite Newton-Cotes rules on uniform grids

#pragma once

#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace cdd::quad {

// Composite Simpson over [a, b] with an even number of panels.
template <class F>
auto simpson(F&& f, double a, double b, std::size_t panels) {
    if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("simpson: panel count must be even and >= 2");
    using Value = std::decay_t<decltype(f(a))>;
    const double h = (b - a) / static_cast<double>(panels);
    Value sum = f(a);
    sum += f(b);
    Value odd = f(a + h);
    Value even = sum * 0.0;
    for (std::size_t i = 3; i < panels; i += 2) odd += f(a + static_cast<double>(i) * h);
    for (std::size_t i = 2; i < panels; i += 2) even += f(a + static_cast<double>(i) * h);
    sum += 4.0 * odd;
    sum += 2.0 * even;
    return Value(sum * (h / 3.0));
}

// Weight of sample j (0..n) in a fourth-order rule over n uniform intervals of unit
// width. Even n: composite Simpson. Odd n >= 3: Simpson on the first n-3 intervals
// and Simpson 3/8 on the last three. n == 1: trapezoid.
inline double uniform_weight(std::size_t j, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return 0.5;
    if (n % 2 == 0) {
        if (j == 0 || j == n) return 1.0 / 3.0;
        return (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
    }
    const std::size_t m = n - 3; // Simpson part covers [0, m]
    double w = 0.0;
    if (m > 0 && j <= m) {
        if (j == 0 || j == m) w += 1.0 / 3.0;
        else w += (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
    }
    if (j >= m) {
        const std::size_t r = j - m;
        w += (r == 0 || r == 3) ? 3.0 / 8.0 : 9.0 / 8.0;
    }
    return w;
}

} // namespace cdd::quad
