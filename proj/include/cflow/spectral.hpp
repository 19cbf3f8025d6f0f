#pragma once

// Discrete derivatives on the periodic unit interval.
//
// p and q directions are differentiated spectrally: the dense circulant
// differentiation matrix is assembled once per grid size from its DFT
// symbol (i 2 pi k for the first derivative, -(2 pi k)^2 for the second,
// Nyquist handled in the usual way), so resolved Fourier modes are
// differentiated to machine precision for any n.  The z direction uses
// centered second-order differences with periodic wrap.

#include <cmath>
#include <numbers>
#include <vector>

#include "cflow/grid.hpp"

namespace cflow {
namespace spectral {

/// Integer wavenumber assigned to DFT bin m of an n-point grid for odd
/// derivatives (Nyquist bin maps to 0).
inline int signed_wavenumber(int m, int n) {
    if (2 * m < n) return m;
    if (2 * m == n) return 0;
    return m - n;
}

/// Dense n x n first-derivative matrix for period-1 samples, row-major.
inline std::vector<double> first_derivative_matrix(int n) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            double sum = 0.0;
            for (int m = 1; m < n; ++m) {
                const int k = signed_wavenumber(m, n);
                if (k == 0) continue;
                sum += k * std::sin(two_pi * m * (j - l) / n);
            }
            d[static_cast<std::size_t>(j) * n + l] = -(two_pi / n) * sum;
        }
    }
    return d;
}

/// Dense n x n second-derivative matrix (symbol -(2 pi k)^2, Nyquist kept).
inline std::vector<double> second_derivative_matrix(int n) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            double sum = 0.0;
            for (int m = 1; m < n; ++m) {
                const int k = std::min(m, n - m);
                sum += static_cast<double>(k) * k * std::cos(two_pi * m * (j - l) / n);
            }
            d[static_cast<std::size_t>(j) * n + l] = -(two_pi * two_pi / n) * sum;
        }
    }
    return d;
}

/// out(i,:,:) = sum_m D(i,m) f(m,:,:) -- apply a matrix along the p axis.
inline ScalarField apply_along_p(const ScalarField& f, const std::vector<double>& d) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const std::size_t plane = static_cast<std::size_t>(g.n_q) * g.n_z;
    const double* fv = f.values().data();
    double* ov = out.values().data();
    for (int i = 0; i < g.n_p; ++i) {
        double* orow = ov + i * plane;
        for (int m = 0; m < g.n_p; ++m) {
            const double w = d[static_cast<std::size_t>(i) * g.n_p + m];
            const double* frow = fv + m * plane;
            for (std::size_t t = 0; t < plane; ++t) orow[t] += w * frow[t];
        }
    }
    return out;
}

/// Apply a matrix along the q axis.
inline ScalarField apply_along_q(const ScalarField& f, const std::vector<double>& d) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const double* fv = f.values().data();
    double* ov = out.values().data();
    for (int i = 0; i < g.n_p; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * g.n_q * g.n_z;
        for (int j = 0; j < g.n_q; ++j) {
            double* orow = ov + base + static_cast<std::size_t>(j) * g.n_z;
            for (int m = 0; m < g.n_q; ++m) {
                const double w = d[static_cast<std::size_t>(j) * g.n_q + m];
                const double* frow = fv + base + static_cast<std::size_t>(m) * g.n_z;
                for (int k = 0; k < g.n_z; ++k) orow[k] += w * frow[k];
            }
        }
    }
    return out;
}

/// Centered second-order d/dz with periodic wrap.
inline ScalarField dz_centered(const ScalarField& f) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const double inv_2h = 0.5 * g.n_z;
    for (int i = 0; i < g.n_p; ++i) {
        for (int j = 0; j < g.n_q; ++j) {
            for (int k = 0; k < g.n_z; ++k) {
                const int kp = (k + 1) % g.n_z;
                const int km = (k + g.n_z - 1) % g.n_z;
                out(i, j, k) = (f(i, j, kp) - f(i, j, km)) * inv_2h;
            }
        }
    }
    return out;
}

/// Centered second-order d^2/dz^2 with periodic wrap.
inline ScalarField dzz_centered(const ScalarField& f) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const double inv_h2 = static_cast<double>(g.n_z) * g.n_z;
    for (int i = 0; i < g.n_p; ++i) {
        for (int j = 0; j < g.n_q; ++j) {
            for (int k = 0; k < g.n_z; ++k) {
                const int kp = (k + 1) % g.n_z;
                const int km = (k + g.n_z - 1) % g.n_z;
                out(i, j, k) = (f(i, j, kp) - 2.0 * f(i, j, k) + f(i, j, km)) * inv_h2;
            }
        }
    }
    return out;
}

/// Band-limited periodic shift along z: returns samples of the
/// trigonometric interpolant of f evaluated at z - shift.  Exact (to
/// roundoff) for data whose z content is resolved on the grid; the even-n
/// Nyquist bin is treated as a pure cosine mode.
inline ScalarField shift_z(const ScalarField& f, double shift) {
    const GridSpec& g = f.grid();
    const int n = g.n_z;
    const double two_pi = 2.0 * std::numbers::pi;
    const int m_max = (n - 1) / 2;
    const bool has_nyquist = (n % 2 == 0);

    ScalarField out(g);
    std::vector<double> cosc(m_max + 1), sinc(m_max + 1), pencil(n);
    for (int i = 0; i < g.n_p; ++i) {
        for (int j = 0; j < g.n_q; ++j) {
            for (int k = 0; k < n; ++k) pencil[k] = f(i, j, k);

            // Real DFT of the pencil.
            double c0 = 0.0, cny = 0.0;
            for (int k = 0; k < n; ++k) c0 += pencil[k];
            c0 /= n;
            for (int m = 1; m <= m_max; ++m) {
                double cs = 0.0, sn = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double ang = two_pi * m * k / n;
                    cs += pencil[k] * std::cos(ang);
                    sn += pencil[k] * std::sin(ang);
                }
                cosc[m] = 2.0 * cs / n;
                sinc[m] = 2.0 * sn / n;
            }
            if (has_nyquist) {
                for (int k = 0; k < n; ++k)
                    cny += (k % 2 == 0 ? pencil[k] : -pencil[k]);
                cny /= n;
            }

            // Evaluate the interpolant at z_k - shift.
            for (int k = 0; k < n; ++k) {
                const double x = g.z(k) - shift;
                double v = c0;
                for (int m = 1; m <= m_max; ++m) {
                    const double ang = two_pi * m * x;
                    v += cosc[m] * std::cos(ang) + sinc[m] * std::sin(ang);
                }
                if (has_nyquist) v += cny * std::cos(std::numbers::pi * n * x);
                out(i, j, k) = v;
            }
        }
    }
    return out;
}

}  // namespace spectral
}  // namespace cflow
