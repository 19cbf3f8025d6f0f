#pragma once

// Test-only brute-force oracles, independent of the library's operator
// implementations.
//
// The curl oracle goes through the coordinate exterior-derivative route:
// frame components are converted to covariant coordinate components
// b_i = h_i B_i, the contravariant curl is c^i = eps^{ijk} d_j b_k / sqrt(g),
// and the result is converted back to frame components.  All derivatives
// are fourth-order central differences, Richardson-extrapolated from
// steps h and h/2.

#include <array>
#include <cmath>
#include <functional>

#include "cflow/metric.hpp"

namespace oracle {

using Fn3 = std::function<double(double, double, double)>;

template <typename F>
double central_diff4(F&& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
           (12.0 * h);
}

template <typename F>
double richardson_diff(F&& f, double x, double h) {
    const double coarse = central_diff4(f, x, h);
    const double fine = central_diff4(f, x, 0.5 * h);
    return (16.0 * fine - coarse) / 15.0;
}

/// Frame components of curl B at one point.
inline std::array<double, 3> fd_curl(const cflow::CFlowMetric& m,
                                     const std::array<Fn3, 3>& b_frame, double p, double q,
                                     double z, double h = 1e-2) {
    auto scale = [&](int i, double zz) {
        if (i == 0) return std::pow(m.lambda1(), zz);
        if (i == 1) return std::pow(m.lambda2(), zz);
        return 1.0;
    };
    // Covariant coordinate components b_i = h_i B_i.
    auto b_cov = [&](int i, double pp, double qq, double zz) {
        return scale(i, zz) * b_frame[i](pp, qq, zz);
    };
    // d_axis b_i at (p, q, z).
    auto partial = [&](int axis, int i) {
        if (axis == 0)
            return richardson_diff([&](double x) { return b_cov(i, x, q, z); }, p, h);
        if (axis == 1)
            return richardson_diff([&](double x) { return b_cov(i, p, x, z); }, q, h);
        return richardson_diff([&](double x) { return b_cov(i, p, q, x); }, z, h);
    };

    const double sqrt_g = scale(0, z) * scale(1, z);
    const double c_p = (partial(1, 2) - partial(2, 1)) / sqrt_g;
    const double c_q = (partial(2, 0) - partial(0, 2)) / sqrt_g;
    const double c_z = (partial(0, 1) - partial(1, 0)) / sqrt_g;
    return {scale(0, z) * c_p, scale(1, z) * c_q, scale(2, z) * c_z};
}

}  // namespace oracle
