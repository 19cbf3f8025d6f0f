#pragma once

// Exact exterior algebra over the orthonormal co-frame
// (w^p, w^q, w^z) = (lambda1^z dp, lambda2^z dq, dz).
//
// Coefficient functions of z are sums of exponentials c * e^{rate z},
// which the family is closed under: the exterior derivative uses the
// structure relations
//
//   d w^p = mu1 w^z ^ w^p,   d w^q = mu2 w^z ^ w^q,   d w^z = 0,
//
// so wedge products and d never leave the representation and all algebra
// is exact (no floating-point differentiation anywhere in this module).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cflow/metric.hpp"

namespace cflow {

/// Sum of c_i * e^{rate_i z} terms, kept normalized: terms with equal
/// rates are merged and zero coefficients dropped, so exact cancellation
/// leaves the empty sum.
class ZExpSum {
 public:
    struct Term {
        double coef;
        double rate;
    };

    ZExpSum() = default;

    static ZExpSum constant(double c) { return ZExpSum({{c, 0.0}}); }
    static ZExpSum exponential(double coef, double rate) { return ZExpSum({{coef, rate}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double eval(double z) const {
        double v = 0.0;
        for (const Term& t : terms_) v += t.coef * std::exp(t.rate * z);
        return v;
    }

    /// Largest |coefficient|; zero for the empty sum.
    double max_coef() const {
        double m = 0.0;
        for (const Term& t : terms_) m = std::max(m, std::abs(t.coef));
        return m;
    }

    /// True when the sum is a single rate-0 term (or empty).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].rate == 0.0);
    }

    ZExpSum operator+(const ZExpSum& o) const {
        std::vector<Term> all = terms_;
        all.insert(all.end(), o.terms_.begin(), o.terms_.end());
        return ZExpSum(std::move(all));
    }
    ZExpSum operator-(const ZExpSum& o) const { return *this + o.scaled(-1.0); }

    ZExpSum scaled(double a) const {
        std::vector<Term> out = terms_;
        for (Term& t : out) t.coef *= a;
        return ZExpSum(std::move(out));
    }

    /// Product: rates add, coefficients multiply.
    ZExpSum operator*(const ZExpSum& o) const {
        std::vector<Term> out;
        out.reserve(terms_.size() * o.terms_.size());
        for (const Term& a : terms_)
            for (const Term& b : o.terms_)
                out.push_back({a.coef * b.coef, a.rate + b.rate});
        return ZExpSum(std::move(out));
    }

    /// d/dz: each term picks up its rate.
    ZExpSum derivative() const {
        std::vector<Term> out;
        for (const Term& t : terms_) out.push_back({t.coef * t.rate, t.rate});
        return ZExpSum(std::move(out));
    }

 private:
    explicit ZExpSum(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    void normalize() {
        std::vector<Term> merged;
        for (const Term& t : terms_) {
            bool found = false;
            for (Term& m : merged) {
                if (std::abs(m.rate - t.rate) <= 1e-12) {
                    m.coef += t.coef;
                    found = true;
                    break;
                }
            }
            if (!found) merged.push_back(t);
        }
        terms_.clear();
        for (const Term& m : merged)
            if (m.coef != 0.0) terms_.push_back(m);
    }

    std::vector<Term> terms_;
};

/// 1-form a_p w^p + a_q w^q + a_z w^z.
struct OneForm {
    ZExpSum p, q, z;

    static OneForm zero() { return {}; }
    static OneForm basis(int i) {
        OneForm f;
        (i == 0 ? f.p : i == 1 ? f.q : f.z) = ZExpSum::constant(1.0);
        return f;
    }

    const ZExpSum& component(int i) const { return i == 0 ? p : (i == 1 ? q : z); }

    OneForm operator+(const OneForm& o) const { return {p + o.p, q + o.q, z + o.z}; }
    OneForm operator-(const OneForm& o) const { return {p - o.p, q - o.q, z - o.z}; }
    OneForm scaled(double a) const { return {p.scaled(a), q.scaled(a), z.scaled(a)}; }

    double max_coef() const {
        return std::max({p.max_coef(), q.max_coef(), z.max_coef()});
    }

    /// Coefficients over the coordinate co-basis (dp, dq, dz) at height z0:
    /// w^p = lambda1^z dp and w^q = lambda2^z dq carry the scale factors.
    std::array<double, 3> coordinate_coefficients(const CFlowMetric& m, double z0) const {
        return {p.eval(z0) * std::pow(m.lambda1(), z0),
                q.eval(z0) * std::pow(m.lambda2(), z0), z.eval(z0)};
    }
};

/// 2-form with components over (w^p^w^q, w^p^w^z, w^q^w^z).
struct TwoForm {
    ZExpSum pq, pz, qz;

    TwoForm operator+(const TwoForm& o) const { return {pq + o.pq, pz + o.pz, qz + o.qz}; }
    TwoForm operator-(const TwoForm& o) const { return {pq - o.pq, pz - o.pz, qz - o.qz}; }
    TwoForm scaled(double a) const { return {pq.scaled(a), pz.scaled(a), qz.scaled(a)}; }

    /// Coefficient of w^k ^ w^l with sign handling for k > l.
    ZExpSum coefficient(int k, int l) const {
        if (k == l) return ZExpSum();
        if (k > l) return coefficient(l, k).scaled(-1.0);
        if (k == 0 && l == 1) return pq;
        if (k == 0 && l == 2) return pz;
        return qz;
    }

    double max_coef() const {
        return std::max({pq.max_coef(), pz.max_coef(), qz.max_coef()});
    }
    bool is_zero() const { return pq.is_zero() && pz.is_zero() && qz.is_zero(); }
};

inline TwoForm wedge(const OneForm& a, const OneForm& b) {
    return {a.p * b.q - a.q * b.p, a.p * b.z - a.z * b.p, a.q * b.z - a.z * b.q};
}

/// Exterior derivative in the frame co-basis.  Coefficients depend on z
/// only, so d(f_i w^i) = f_i' w^z ^ w^i + f_i d w^i with the structure
/// relations above; w^z ^ w^p = -w^p ^ w^z.
inline TwoForm exterior_d(const CFlowMetric& m, const OneForm& f) {
    const ZExpSum cp = (f.p.derivative() + f.p.scaled(m.mu1())).scaled(-1.0);
    const ZExpSum cq = (f.q.derivative() + f.q.scaled(m.mu2())).scaled(-1.0);
    return {ZExpSum(), cp, cq};
}

}  // namespace cflow
