#pragma once

// Exponential growth-rate estimation: least-squares slope of ln|norm|(t)
// over a fit window.  A component whose norm touches zero (or below)
// anywhere in the window is reported as undefined rather than fitted.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cflow/induction.hpp"

namespace cflow {

struct GrowthRates {
    std::optional<double> rate_p;
    std::optional<double> rate_q;
    std::optional<double> rate_z;
};

namespace detail {

inline std::optional<double> log_linear_slope(const std::vector<double>& t,
                                              const std::vector<double>& norm,
                                              const std::vector<std::size_t>& idx) {
    for (std::size_t i : idx)
        if (!(norm[i] > 0.0)) return std::nullopt;

    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i : idx) {
        t_mean += t[i];
        y_mean += std::log(norm[i]);
    }
    t_mean /= static_cast<double>(idx.size());
    y_mean /= static_cast<double>(idx.size());

    double stt = 0.0, sty = 0.0;
    for (std::size_t i : idx) {
        const double dt = t[i] - t_mean;
        stt += dt * dt;
        sty += dt * (std::log(norm[i]) - y_mean);
    }
    if (stt == 0.0) return std::nullopt;
    return sty / stt;
}

}  // namespace detail

/// Per-component slope of ln||B_i||(t) over [t0, t1].  Requires at least
/// ten samples inside the window.
inline GrowthRates growth_rates(const SimRecord& rec, double t0, double t1) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const double t = rec.times[i];
        if (t >= t0 - 1e-12 && t <= t1 + 1e-12) idx.push_back(i);
    }
    if (idx.size() < 10)
        throw std::invalid_argument("fit window must contain at least 10 samples (got " +
                                    std::to_string(idx.size()) + ")");
    GrowthRates rates;
    rates.rate_p = detail::log_linear_slope(rec.times, rec.norm_p, idx);
    rates.rate_q = detail::log_linear_slope(rec.times, rec.norm_q, idx);
    rates.rate_z = detail::log_linear_slope(rec.times, rec.norm_z, idx);
    return rates;
}

/// Slope of ln(energy) over [t0, t1]; undefined if the energy is not
/// strictly positive throughout.
inline std::optional<double> energy_growth_rate(const SimRecord& rec, double t0, double t1) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const double t = rec.times[i];
        if (t >= t0 - 1e-12 && t <= t1 + 1e-12) idx.push_back(i);
    }
    if (idx.size() < 2) return std::nullopt;
    return detail::log_linear_slope(rec.times, rec.energy, idx);
}

}  // namespace cflow
