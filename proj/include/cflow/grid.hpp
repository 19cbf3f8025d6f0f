#pragma once

// Periodic (p, q, z) grid on [0,1)^3 and the sampled field containers.
// Storage layout is z-fastest, so z-pencils are contiguous.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cflow {

struct GridSpec {
    int n_p = 0;
    int n_q = 0;
    int n_z = 0;

    GridSpec() = default;
    GridSpec(int np, int nq, int nz) : n_p(np), n_q(nq), n_z(nz) {
        auto check = [](int n, const char* name) {
            if (n < 4) {
                std::ostringstream msg;
                msg << name << " must be >= 4 (got " << n << ")";
                throw std::invalid_argument(msg.str());
            }
        };
        check(np, "n_p");
        check(nq, "n_q");
        check(nz, "n_z");
    }

    double h_p() const { return 1.0 / n_p; }
    double h_q() const { return 1.0 / n_q; }
    double h_z() const { return 1.0 / n_z; }

    double p(int i) const { return static_cast<double>(i) / n_p; }
    double q(int j) const { return static_cast<double>(j) / n_q; }
    double z(int k) const { return static_cast<double>(k) / n_z; }

    std::size_t size() const {
        return static_cast<std::size_t>(n_p) * n_q * n_z;
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_q + j) * n_z + k;
    }

    bool operator==(const GridSpec& o) const {
        return n_p == o.n_p && n_q == o.n_q && n_z == o.n_z;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

class ScalarField {
 public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& grid)
        : grid_(grid), values_(grid.size(), 0.0) {}

    /// Sample f(p, q, z) at every node.
    static ScalarField sample(const GridSpec& grid,
                              const std::function<double(double, double, double)>& f) {
        ScalarField out(grid);
        for (int i = 0; i < grid.n_p; ++i)
            for (int j = 0; j < grid.n_q; ++j)
                for (int k = 0; k < grid.n_z; ++k)
                    out(i, j, k) = f(grid.p(i), grid.q(j), grid.z(k));
        return out;
    }

    const GridSpec& grid() const { return grid_; }

    double& operator()(int i, int j, int k) { return values_[grid_.index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

 private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Vector field expressed in the orthonormal frame (e_p, e_q, e_z).
class FrameField {
 public:
    FrameField() = default;
    explicit FrameField(const GridSpec& grid)
        : grid_(grid), b_p_(grid), b_q_(grid), b_z_(grid) {}

    FrameField(ScalarField bp, ScalarField bq, ScalarField bz)
        : grid_(bp.grid()), b_p_(std::move(bp)), b_q_(std::move(bq)), b_z_(std::move(bz)) {
        if (b_q_.grid() != grid_ || b_z_.grid() != grid_)
            throw std::invalid_argument("frame field components must share one grid");
    }

    const GridSpec& grid() const { return grid_; }

    ScalarField& p() { return b_p_; }
    ScalarField& q() { return b_q_; }
    ScalarField& z() { return b_z_; }
    const ScalarField& p() const { return b_p_; }
    const ScalarField& q() const { return b_q_; }
    const ScalarField& z() const { return b_z_; }

    ScalarField& component(int c) { return c == 0 ? b_p_ : (c == 1 ? b_q_ : b_z_); }
    const ScalarField& component(int c) const {
        return c == 0 ? b_p_ : (c == 1 ? b_q_ : b_z_);
    }

    bool all_finite() const {
        return b_p_.all_finite() && b_q_.all_finite() && b_z_.all_finite();
    }

    double max_abs() const {
        return std::max({b_p_.max_abs(), b_q_.max_abs(), b_z_.max_abs()});
    }

 private:
    GridSpec grid_;
    ScalarField b_p_;
    ScalarField b_q_;
    ScalarField b_z_;
};

namespace fieldmath {

inline void axpy(double a, const ScalarField& x, ScalarField& y) {
    const auto& xv = x.values();
    auto& yv = y.values();
    for (std::size_t n = 0; n < yv.size(); ++n) yv[n] += a * xv[n];
}

inline void axpy(double a, const FrameField& x, FrameField& y) {
    for (int c = 0; c < 3; ++c) axpy(a, x.component(c), y.component(c));
}

inline ScalarField scaled(const ScalarField& x, double a) {
    ScalarField out = x;
    for (double& v : out.values()) v *= a;
    return out;
}

inline FrameField scaled(const FrameField& x, double a) {
    return FrameField(scaled(x.p(), a), scaled(x.q(), a), scaled(x.z(), a));
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    const auto& av = a.values();
    const auto& bv = b.values();
    double m = 0.0;
    for (std::size_t n = 0; n < av.size(); ++n)
        m = std::max(m, std::abs(av[n] - bv[n]));
    return m;
}

inline double max_abs_diff(const FrameField& a, const FrameField& b) {
    return std::max({max_abs_diff(a.p(), b.p()), max_abs_diff(a.q(), b.q()),
                     max_abs_diff(a.z(), b.z())});
}

}  // namespace fieldmath

}  // namespace cflow
