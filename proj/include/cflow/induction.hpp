#pragma once

// Kinematic induction solver for the flow u = v e_z on the stretched
// torus.  The ideal transport system
//
//   dt B_p = -v dz B_p + v mu1 B_p
//   dt B_q = -v dz B_q + v mu2 B_q
//   dt B_z = -v dz B_z
//
// has the closed-form solution
//
//   (B_p, B_q, B_z)(p, q, z, t)
//       = (lambda1^{vt} B_p0, lambda2^{vt} B_q0, B_z0)(p, q, z - vt),
//
// implemented in analytic_ideal below; the resistive system adds
// eta * (grad(div B) - curl(curl B)).  Time integration is classical RK4
// with a CFL-style step bound.  Everything is deterministic: single
// threaded arithmetic, no order-dependent reductions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cflow/frame_ops.hpp"
#include "cflow/grid.hpp"
#include "cflow/metric.hpp"
#include "cflow/spectral.hpp"

namespace cflow {

enum class FieldComponent { p, q, z };

inline std::string to_string(FieldComponent c) {
    switch (c) {
        case FieldComponent::p: return "p";
        case FieldComponent::q: return "q";
        default: return "z";
    }
}

/// One Fourier mode of the initial field:
///   amplitude * cos(2 pi (k_p p + k_q q + k_z z) + phase)
/// added to the named frame component.
struct FieldMode {
    FieldComponent component = FieldComponent::p;
    int k_p = 0;
    int k_q = 0;
    int k_z = 0;
    double amplitude = 0.0;
    double phase = 0.0;
};

struct InitialCondition {
    std::vector<FieldMode> modes;
    /// When set, simulate() verifies max|div B(0)| <= div_free_tol.
    bool require_divergence_free = false;
    double div_free_tol = 1e-10;

    bool has_nonzero_amplitude() const {
        for (const auto& m : modes)
            if (m.amplitude != 0.0) return true;
        return false;
    }
};

inline FrameField build_initial_field(const InitialCondition& ic, const GridSpec& grid) {
    FrameField out(grid);
    const double two_pi = 2.0 * std::numbers::pi;
    for (const auto& mode : ic.modes) {
        ScalarField& target = out.component(static_cast<int>(mode.component));
        for (int i = 0; i < grid.n_p; ++i)
            for (int j = 0; j < grid.n_q; ++j)
                for (int k = 0; k < grid.n_z; ++k) {
                    const double arg = two_pi * (mode.k_p * grid.p(i) + mode.k_q * grid.q(j) +
                                                 mode.k_z * grid.z(k)) +
                                       mode.phase;
                    target(i, j, k) += mode.amplitude * std::cos(arg);
                }
    }
    return out;
}

struct SimConfig {
    CFlowMetric metric{1.0, 1.0};
    GridSpec grid{4, 4, 4};
    double eta = 0.0;   // resistivity, >= 0
    double v = 1.0;     // flow speed along e_z
    double dt = 0.0;
    double t_end = 0.0;
    int sample_stride = 1;
    InitialCondition initial;
    bool store_snapshots = false;
    int snapshot_stride = 1;

    /// Advective/diffusive step bound: dt <= 0.5 min(h_z/|v|, h_z^2/(2 eta)).
    double stability_bound() const {
        const double h = grid.h_z();
        double bound = std::numeric_limits<double>::infinity();
        if (v != 0.0) bound = std::min(bound, h / std::abs(v));
        if (eta > 0.0) bound = std::min(bound, h * h / (2.0 * eta));
        return 0.5 * bound;
    }

    void validate() const {
        if (!(eta >= 0.0) || !std::isfinite(eta))
            throw std::invalid_argument("eta must be finite and >= 0");
        if (!std::isfinite(v)) throw std::invalid_argument("v must be finite");
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("dt must be finite and > 0");
        if (!(t_end >= dt) || !std::isfinite(t_end))
            throw std::invalid_argument("t_end must be finite and >= dt");
        if (sample_stride < 1)
            throw std::invalid_argument("sample_stride must be >= 1");
        const double bound = this->stability_bound();
        if (dt > bound * (1.0 + 1e-9)) {
            std::ostringstream msg;
            msg << "dt = " << dt << " violates the stability bound " << bound
                << " (0.5 min(h_z/|v|, h_z^2/(2 eta)))";
            throw std::invalid_argument(msg.str());
        }
        if (!initial.has_nonzero_amplitude())
            throw std::invalid_argument("empty initial condition: no mode with nonzero amplitude");
    }
};

/// Diagnostics time series.  Norms are flat L2 norms of each frame
/// component, sqrt(sum B_i^2 dV); the energy carries the Riemannian
/// volume weight sqrt(g) = (lambda1 lambda2)^z.
struct SimRecord {
    std::vector<double> times;
    std::vector<double> norm_p;
    std::vector<double> norm_q;
    std::vector<double> norm_z;
    std::vector<double> energy;
    std::vector<double> max_div;
    FrameField final_field;
    std::vector<std::pair<double, FrameField>> snapshots;

    std::size_t samples() const { return times.size(); }
};

class InstabilityError : public std::runtime_error {
 public:
    InstabilityError(std::size_t step, double t)
        : std::runtime_error("non-finite field value after step " + std::to_string(step) +
                             " (t = " + std::to_string(t) + ")"),
          step_(step) {}
    std::size_t step() const { return step_; }

 private:
    std::size_t step_;
};

/// Right-hand side of the ideal (eta = 0) system at flow speed v.
inline FrameField ideal_rhs(const CFlowMetric& m, double v, const FrameField& b) {
    const double mu1 = m.mu1();
    const double mu2 = m.mu2();

    ScalarField rp = spectral::dz_centered(b.p());
    ScalarField rq = spectral::dz_centered(b.q());
    ScalarField rz = spectral::dz_centered(b.z());
    for (std::size_t n = 0; n < rp.values().size(); ++n) {
        rp.values()[n] = v * (mu1 * b.p().values()[n] - rp.values()[n]);
        rq.values()[n] = v * (mu2 * b.q().values()[n] - rq.values()[n]);
        rz.values()[n] = -v * rz.values()[n];
    }
    return FrameField(std::move(rp), std::move(rq), std::move(rz));
}

/// ideal_rhs + eta (grad(div B) - curl(curl B)); equals ideal_rhs exactly
/// at eta = 0.
inline FrameField resistive_rhs(const FrameCalculus& calc, double v, double eta,
                                const FrameField& b) {
    FrameField out = ideal_rhs(calc.metric(), v, b);
    if (eta > 0.0) fieldmath::axpy(eta, calc.vector_laplacian(b), out);
    return out;
}

inline FrameField resistive_rhs(const CFlowMetric& m, double v, double eta,
                                const FrameField& b) {
    const FrameCalculus calc(m, b.grid());
    return resistive_rhs(calc, v, eta, b);
}

/// One classical RK4 step of the resistive system.
inline FrameField rk4_step(const FrameCalculus& calc, double v, double eta,
                           const FrameField& b, double dt) {
    if (dt == 0.0) return b;
    FrameField k1 = resistive_rhs(calc, v, eta, b);

    FrameField stage = b;
    fieldmath::axpy(0.5 * dt, k1, stage);
    FrameField k2 = resistive_rhs(calc, v, eta, stage);

    stage = b;
    fieldmath::axpy(0.5 * dt, k2, stage);
    FrameField k3 = resistive_rhs(calc, v, eta, stage);

    stage = b;
    fieldmath::axpy(dt, k3, stage);
    FrameField k4 = resistive_rhs(calc, v, eta, stage);

    FrameField out = b;
    fieldmath::axpy(dt / 6.0, k1, out);
    fieldmath::axpy(dt / 3.0, k2, out);
    fieldmath::axpy(dt / 3.0, k3, out);
    fieldmath::axpy(dt / 6.0, k4, out);
    return out;
}

inline FrameField step(const CFlowMetric& m, double v, double eta, const FrameField& b,
                       double dt) {
    const FrameCalculus calc(m, b.grid());
    FrameField out = rk4_step(calc, v, eta, b, dt);
    if (!out.all_finite()) throw InstabilityError(1, dt);
    return out;
}

namespace detail {

inline double component_norm(const ScalarField& f, double dv) {
    double sum = 0.0;
    for (double x : f.values()) sum += x * x;
    return std::sqrt(sum * dv);
}

inline double total_energy(const FrameField& b, const std::vector<double>& sqrt_g, double dv) {
    const GridSpec& g = b.grid();
    double sum = 0.0;
    for (int i = 0; i < g.n_p; ++i)
        for (int j = 0; j < g.n_q; ++j)
            for (int k = 0; k < g.n_z; ++k) {
                const double bp = b.p()(i, j, k);
                const double bq = b.q()(i, j, k);
                const double bz = b.z()(i, j, k);
                sum += (bp * bp + bq * bq + bz * bz) * sqrt_g[k];
            }
    return 0.5 * sum * dv;
}

}  // namespace detail

/// Integrates the induction system from t = 0 to t_end, sampling
/// diagnostics every sample_stride steps (plus the initial and final
/// states).  Deterministic: a fixed config yields a bitwise-identical
/// record on every run.
inline SimRecord simulate(const SimConfig& cfg) {
    cfg.validate();
    const FrameCalculus calc(cfg.metric, cfg.grid);
    const double dv = cfg.grid.h_p() * cfg.grid.h_q() * cfg.grid.h_z();

    FrameField b = build_initial_field(cfg.initial, cfg.grid);
    if (cfg.initial.require_divergence_free) {
        const double div0 = calc.divergence(b).max_abs();
        if (div0 > cfg.initial.div_free_tol) {
            std::ostringstream msg;
            msg << "initial condition flagged divergence-free but max|div B(0)| = " << div0;
            throw std::invalid_argument(msg.str());
        }
    }

    SimRecord rec;
    auto record_sample = [&](double t, const FrameField& field) {
        rec.times.push_back(t);
        rec.norm_p.push_back(detail::component_norm(field.p(), dv));
        rec.norm_q.push_back(detail::component_norm(field.q(), dv));
        rec.norm_z.push_back(detail::component_norm(field.z(), dv));
        rec.energy.push_back(detail::total_energy(field, calc.sqrt_g(), dv));
        rec.max_div.push_back(calc.divergence(field).max_abs());
    };

    record_sample(0.0, b);
    if (cfg.store_snapshots) rec.snapshots.emplace_back(0.0, b);

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    double t = 0.0;
    for (std::size_t s = 1; s <= n_steps; ++s) {
        const double dt = std::max(0.0, std::min(cfg.dt, cfg.t_end - t));
        b = rk4_step(calc, cfg.v, cfg.eta, b, dt);
        t = (s == n_steps) ? cfg.t_end : t + dt;
        if (!b.all_finite()) throw InstabilityError(s, t);

        const bool last = (s == n_steps);
        if (last || s % static_cast<std::size_t>(cfg.sample_stride) == 0)
            record_sample(t, b);
        if (cfg.store_snapshots &&
            (last || s % static_cast<std::size_t>(cfg.snapshot_stride) == 0))
            rec.snapshots.emplace_back(t, b);
    }
    rec.final_field = std::move(b);
    return rec;
}

/// Closed-form ideal solution: scales the p/q components by lambda_A^{vt}
/// and transports every component to z - vt via band-limited interpolation.
inline FrameField analytic_ideal(const CFlowMetric& m, const FrameField& b0, double v,
                                 double t) {
    const double shift = v * t;
    ScalarField bp = spectral::shift_z(b0.p(), shift);
    ScalarField bq = spectral::shift_z(b0.q(), shift);
    ScalarField bz = spectral::shift_z(b0.z(), shift);
    const double gp = std::pow(m.lambda1(), v * t);
    const double gq = std::pow(m.lambda2(), v * t);
    for (double& x : bp.values()) x *= gp;
    for (double& x : bq.values()) x *= gq;
    return FrameField(std::move(bp), std::move(bq), std::move(bz));
}

/// Cat-map regression target: b(t) = (e^{-lambda v t} b_p0, e^{lambda v t} b_q0,
/// b_z0)(z - vt), the growing branch living on the q component.  Kept as an
/// independent code path from analytic_ideal on purpose.
inline FrameField analytic_arnold(const FrameField& b0, double lambda, double v, double t) {
    const double shift = v * t;
    ScalarField bp = spectral::shift_z(b0.p(), shift);
    ScalarField bq = spectral::shift_z(b0.q(), shift);
    ScalarField bz = spectral::shift_z(b0.z(), shift);
    const double grow = std::exp(lambda * v * t);
    for (double& x : bp.values()) x /= grow;
    for (double& x : bq.values()) x *= grow;
    return FrameField(std::move(bp), std::move(bq), std::move(bz));
}

}  // namespace cflow
