#pragma once

// Two-parameter stretched-torus metric family
//
//   ds^2 = lambda1^{2z} dp^2 + lambda2^{2z} dq^2 + dz^2
//
// on T^2 x [0,1).  The Arnold cat-map metric is the lambda1 = 1/lambda2
// slice.  Everything downstream (frame operators, induction solver,
// curvature) is parameterized by this type.

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cflow {

/// A point on the torus cover, either (x, y) or (p, q) depending on context.
struct CoordinatePair {
    double first = 0.0;
    double second = 0.0;
};

enum class Axis { p, q };

namespace detail {

inline void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be finite (got " << value << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace detail

/// Immutable value type holding (lambda1, lambda2) with the derived
/// stretch exponents mu_A = ln(lambda_A).  Instances are validated on
/// construction: both bases must be finite and strictly positive, so the
/// metric coefficients lambda_A^{2z} stay real and positive for all z.
/// Compression is expressed as 0 < lambda_A < 1 (mu_A < 0).
class CFlowMetric {
 public:
    CFlowMetric(double lambda1, double lambda2)
        : lambda1_(lambda1), lambda2_(lambda2) {
        validate_base(lambda1, "lambda1");
        validate_base(lambda2, "lambda2");
        mu1_ = std::log(lambda1);
        mu2_ = std::log(lambda2);
    }

    /// The Arnold cat-map slice: lambda1 = exp(-lambda), lambda2 = exp(lambda),
    /// so the line element is exp(-2 lambda z) dp^2 + exp(2 lambda z) dq^2 + dz^2.
    static CFlowMetric from_arnold(double lambda) {
        detail::require_finite(lambda, "lambda");
        return CFlowMetric(std::exp(-lambda), std::exp(lambda));
    }

    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }

    /// Stretch exponent mu_A = ln(lambda_A).
    double mu(Axis axis) const { return axis == Axis::p ? mu1_ : mu2_; }
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }

    /// True when lambda1 * lambda2 = 1 within 1e-12, i.e. the metric is a
    /// volume-preserving Arnold slice.
    bool is_arnold() const {
        return std::abs(lambda1_ * lambda2_ - 1.0) <= 1e-12;
    }

    /// Orthonormal-frame scale factors (h_p, h_q, h_z) at height z:
    /// ds^2 = (h_p dp)^2 + (h_q dq)^2 + (h_z dz)^2.
    std::array<double, 3> scale_factors(double z) const {
        detail::require_finite(z, "z");
        return {std::pow(lambda1_, z), std::pow(lambda2_, z), 1.0};
    }

    /// beta = lambda1 + lambda2 - 2 lambda1 lambda2.  Zero is a valid
    /// return; consumers deciding invertibility must check it themselves.
    double beta() const { return lambda1_ + lambda2_ - 2.0 * lambda1_ * lambda2_; }

 private:
    static void validate_base(double value, const char* name) {
        detail::require_finite(value, name);
        if (value <= 0.0) {
            std::ostringstream msg;
            msg << name << " must be > 0 (got " << value << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    double lambda1_;
    double lambda2_;
    double mu1_;
    double mu2_;
};

/// Forward coordinate map on the torus cover:
///   p = lambda1 x + (1 - lambda1) y,  q = lambda2 x + (1 - lambda2) y.
inline CoordinatePair xy_to_pq(const CFlowMetric& m, const CoordinatePair& xy) {
    const double l1 = m.lambda1();
    const double l2 = m.lambda2();
    return {l1 * xy.first + (1.0 - l1) * xy.second,
            l2 * xy.first + (1.0 - l2) * xy.second};
}

/// Exact inverse of xy_to_pq.  The forward map's Jacobian determinant is
/// lambda1 - lambda2; the map is singular when the two bases coincide.
/// Configurations with |beta| <= 1e-12 are also rejected as degenerate.
inline CoordinatePair pq_to_xy(const CFlowMetric& m, const CoordinatePair& pq) {
    const double l1 = m.lambda1();
    const double l2 = m.lambda2();
    const double det = l1 - l2;
    const double beta = m.beta();
    if (std::abs(beta) <= 1e-12 || std::abs(det) <= 1e-12) {
        std::ostringstream msg;
        msg << "coordinate map is singular: beta = " << beta
            << ", lambda1 - lambda2 = " << det;
        throw std::domain_error(msg.str());
    }
    return {((1.0 - l2) * pq.first - (1.0 - l1) * pq.second) / det,
            (l1 * pq.second - l2 * pq.first) / det};
}

/// Eigenvalues of the cat map matrix [[2,1],[1,1]]: chi = (3 +- sqrt 5)/2.
/// chi1 > 1 > chi2 > 0 and chi1 * chi2 = 1.
inline std::pair<double, double> cat_eigenvalues() {
    const double root5 = std::sqrt(5.0);
    return {(3.0 + root5) / 2.0, (3.0 - root5) / 2.0};
}

}  // namespace cflow
