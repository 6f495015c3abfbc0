#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace onf::numeric {

// Four-point Lagrange interpolation on a uniform grid x_i = x0 + i dx.
// Falls back to the nearest interior stencil at the ends.
inline double cubic_uniform(const std::vector<double>& y, double x0, double dx, double x)
{
    const std::size_t n = y.size();
    if (n == 1)
        return y[0];
    if (n < 4) {
        const double u = std::clamp((x - x0) / dx, 0.0, static_cast<double>(n - 1));
        const auto i = std::min(static_cast<std::size_t>(u), n - 2);
        const double f = u - static_cast<double>(i);
        return (1.0 - f) * y[i] + f * y[i + 1];
    }
    const double u = (x - x0) / dx;
    auto base = static_cast<std::ptrdiff_t>(std::floor(u)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double s = u - static_cast<double>(base); // in [0, 3]
    const double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    const auto b = static_cast<std::size_t>(base);
    return l0 * y[b] + l1 * y[b + 1] + l2 * y[b + 2] + l3 * y[b + 3];
}

} // namespace onf::numeric
