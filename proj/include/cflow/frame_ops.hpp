#pragma once

// Orthonormal-frame differential operators for the metric
// ds^2 = lambda1^{2z} dp^2 + lambda2^{2z} dq^2 + dz^2, with scale factors
// (h_p, h_q, h_z) = (lambda1^z, lambda2^z, 1):
//
//   grad f  = (h_p^-1 dp f, h_q^-1 dq f, dz f)
//   div B   = h_p^-1 dp B_p + h_q^-1 dq B_q + dz B_z
//   curl B  = (h_q^-1 dq B_z - dz B_q - mu2 B_q,
//              dz B_p + mu1 B_p - h_p^-1 dp B_z,
//              h_p^-1 dp B_q - h_q^-1 dq B_p)
//   lap f   = h_p^-2 dpp f + h_q^-2 dqq f + dzz f + (mu1 + mu2) dz f
//   lap B   = grad(div B) - curl(curl B)
//
// The divergence deliberately omits the (mu1 + mu2) B_z term of the full
// Riemannian divergence, so div e_i = 0 for all three basis vectors and
// the ideal transport solution preserves div B exactly.  The scalar
// Laplacian is the full Laplace-Beltrami operator (its drift term
// (mu1 + mu2) dz vanishes on Arnold slices, where the two definitions of
// divergence coincide).

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cflow/grid.hpp"
#include "cflow/metric.hpp"
#include "cflow/spectral.hpp"

namespace cflow {

/// Precomputed differentiation matrices and coefficient tables for one
/// (metric, grid) pair.  All member operators are pure and const; one
/// instance can serve any number of threads.
class FrameCalculus {
 public:
    FrameCalculus(const CFlowMetric& metric, const GridSpec& grid)
        : metric_(metric),
          grid_(grid),
          dp_(spectral::first_derivative_matrix(grid.n_p)),
          dq_(spectral::first_derivative_matrix(grid.n_q)),
          dpp_(spectral::second_derivative_matrix(grid.n_p)),
          dqq_(spectral::second_derivative_matrix(grid.n_q)),
          inv_hp_(grid.n_z),
          inv_hq_(grid.n_z),
          inv_hp2_(grid.n_z),
          inv_hq2_(grid.n_z),
          sqrt_g_(grid.n_z) {
        for (int k = 0; k < grid.n_z; ++k) {
            const double z = grid.z(k);
            inv_hp_[k] = std::pow(metric.lambda1(), -z);
            inv_hq_[k] = std::pow(metric.lambda2(), -z);
            inv_hp2_[k] = inv_hp_[k] * inv_hp_[k];
            inv_hq2_[k] = inv_hq_[k] * inv_hq_[k];
            sqrt_g_[k] = std::pow(metric.lambda1() * metric.lambda2(), z);
        }
    }

    const CFlowMetric& metric() const { return metric_; }
    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& sqrt_g() const { return sqrt_g_; }

    ScalarField gradient_p(const ScalarField& f) const {
        ScalarField out = spectral::apply_along_p(f, dp_);
        scale_by_z_table(out, inv_hp_);
        return out;
    }
    ScalarField gradient_q(const ScalarField& f) const {
        ScalarField out = spectral::apply_along_q(f, dq_);
        scale_by_z_table(out, inv_hq_);
        return out;
    }

    FrameField gradient(const ScalarField& f) const {
        return FrameField(gradient_p(f), gradient_q(f), spectral::dz_centered(f));
    }

    ScalarField divergence(const FrameField& b) const {
        ScalarField out = gradient_p(b.p());
        fieldmath::axpy(1.0, gradient_q(b.q()), out);
        fieldmath::axpy(1.0, spectral::dz_centered(b.z()), out);
        return out;
    }

    FrameField curl(const FrameField& b) const {
        const double mu1 = metric_.mu1();
        const double mu2 = metric_.mu2();

        ScalarField cp = gradient_q(b.z());
        fieldmath::axpy(-1.0, spectral::dz_centered(b.q()), cp);
        fieldmath::axpy(-mu2, b.q(), cp);

        ScalarField cq = spectral::dz_centered(b.p());
        fieldmath::axpy(mu1, b.p(), cq);
        fieldmath::axpy(-1.0, gradient_p(b.z()), cq);

        ScalarField cz = gradient_p(b.q());
        fieldmath::axpy(-1.0, gradient_q(b.p()), cz);

        return FrameField(std::move(cp), std::move(cq), std::move(cz));
    }

    ScalarField laplacian_scalar(const ScalarField& f) const {
        ScalarField out = spectral::apply_along_p(f, dpp_);
        scale_by_z_table(out, inv_hp2_);
        ScalarField qq = spectral::apply_along_q(f, dqq_);
        scale_by_z_table(qq, inv_hq2_);
        fieldmath::axpy(1.0, qq, out);
        fieldmath::axpy(1.0, spectral::dzz_centered(f), out);
        fieldmath::axpy(metric_.mu1() + metric_.mu2(), spectral::dz_centered(f), out);
        return out;
    }

    FrameField vector_laplacian(const FrameField& b) const {
        FrameField out = gradient(divergence(b));
        fieldmath::axpy(-1.0, curl(curl(b)), out);
        return out;
    }

 private:
    void scale_by_z_table(ScalarField& f, const std::vector<double>& table) const {
        double* v = f.values().data();
        for (int i = 0; i < grid_.n_p; ++i)
            for (int j = 0; j < grid_.n_q; ++j) {
                double* row = v + grid_.index(i, j, 0);
                for (int k = 0; k < grid_.n_z; ++k) row[k] *= table[k];
            }
    }

    CFlowMetric metric_;
    GridSpec grid_;
    std::vector<double> dp_, dq_, dpp_, dqq_;
    std::vector<double> inv_hp_, inv_hq_, inv_hp2_, inv_hq2_, sqrt_g_;
};

// One-shot conveniences; hot loops should hold a FrameCalculus instead.
inline FrameField gradient(const CFlowMetric& m, const ScalarField& f) {
    return FrameCalculus(m, f.grid()).gradient(f);
}
inline ScalarField divergence(const CFlowMetric& m, const FrameField& b) {
    return FrameCalculus(m, b.grid()).divergence(b);
}
inline FrameField curl(const CFlowMetric& m, const FrameField& b) {
    return FrameCalculus(m, b.grid()).curl(b);
}
inline ScalarField laplacian_scalar(const CFlowMetric& m, const ScalarField& f) {
    return FrameCalculus(m, f.grid()).laplacian_scalar(f);
}
inline FrameField vector_laplacian(const CFlowMetric& m, const FrameField& b) {
    return FrameCalculus(m, b.grid()).vector_laplacian(b);
}

/// Constant frame field e_c (unit component c, zero elsewhere).
inline FrameField basis_field(const GridSpec& grid, int c) {
    FrameField out(grid);
    for (double& v : out.component(c).values()) v = 1.0;
    return out;
}

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    double max_residual = 0.0;
    bool all_pass = true;

    void add(const std::string& name, double residual, double bound) {
        const bool ok = residual <= bound;
        checks.push_back({name, residual, bound, ok});
        max_residual = std::max(max_residual, residual);
        all_pass = all_pass && ok;
    }
};

/// Evaluates div, curl and the vector Laplacian on each frame basis
/// vector and reports the deviation from the closed forms
///   div e_i = 0, curl e_p = mu1 e_q, curl e_q = -mu2 e_p, curl e_z = 0,
///   lap e_p = mu1 mu2 e_p, lap e_q = mu1 mu2 e_q, lap e_z = 0.
/// Basis components are constant, so the discrete residuals are pure
/// roundoff and the bound can sit at 1e-10.
inline IdentityReport frame_basis_identities(const CFlowMetric& m,
                                             const GridSpec& grid = GridSpec(8, 8, 16),
                                             double bound = 1e-10) {
    const FrameCalculus calc(m, grid);
    const double mu1 = m.mu1();
    const double mu2 = m.mu2();
    const double mu12 = mu1 * mu2;
    IdentityReport report;

    const FrameField ep = basis_field(grid, 0);
    const FrameField eq = basis_field(grid, 1);
    const FrameField ez = basis_field(grid, 2);

    report.add("div e_p = 0", calc.divergence(ep).max_abs(), bound);
    report.add("div e_q = 0", calc.divergence(eq).max_abs(), bound);
    report.add("div e_z = 0", calc.divergence(ez).max_abs(), bound);

    report.add("curl e_p = mu1 e_q",
               fieldmath::max_abs_diff(calc.curl(ep), fieldmath::scaled(eq, mu1)), bound);
    report.add("curl e_q = -mu2 e_p",
               fieldmath::max_abs_diff(calc.curl(eq), fieldmath::scaled(ep, -mu2)), bound);
    report.add("curl e_z = 0", calc.curl(ez).max_abs(), bound);

    report.add("lap e_p = mu1 mu2 e_p",
               fieldmath::max_abs_diff(calc.vector_laplacian(ep), fieldmath::scaled(ep, mu12)),
               bound);
    report.add("lap e_q = mu1 mu2 e_q",
               fieldmath::max_abs_diff(calc.vector_laplacian(eq), fieldmath::scaled(eq, mu12)),
               bound);
    report.add("lap e_z = 0", calc.vector_laplacian(ez).max_abs(), bound);

    return report;
}

}  // namespace cflow
