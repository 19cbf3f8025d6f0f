#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cflow/metric.hpp"

using namespace cflow;

TEST_CASE("metric construction validates its bases") {
    const CFlowMetric m(2.0, 0.5);
    REQUIRE(m.is_arnold());

    const CFlowMetric n(2.0, 3.0);
    REQUIRE_FALSE(n.is_arnold());  // lambda1 * lambda2 = 6

    REQUIRE_THROWS_AS(CFlowMetric(0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(CFlowMetric(-2.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(CFlowMetric(1.0, std::nan("")), std::invalid_argument);
    REQUIRE_THROWS_WITH(CFlowMetric(1.0, -1.0),
                        Catch::Matchers::ContainsSubstring("lambda2"));
}

TEST_CASE("from_arnold produces the volume-preserving slice") {
    const CFlowMetric flat = CFlowMetric::from_arnold(0.0);
    REQUIRE(flat.lambda1() == 1.0);
    REQUIRE(flat.lambda2() == 1.0);

    const CFlowMetric m = CFlowMetric::from_arnold(std::log(2.0));
    REQUIRE_THAT(m.lambda1(), Catch::Matchers::WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(m.lambda2(), Catch::Matchers::WithinAbs(2.0, 1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double lambda = dist(rng);
        const CFlowMetric a = CFlowMetric::from_arnold(lambda);
        REQUIRE(a.is_arnold());
        // mu(p) = -lambda and mu(q) = +lambda, exactly up to one log/exp roundtrip.
        REQUIRE_THAT(a.mu(Axis::p), Catch::Matchers::WithinAbs(-lambda, 1e-15));
        REQUIRE_THAT(a.mu(Axis::q), Catch::Matchers::WithinAbs(lambda, 1e-15));
    }

    REQUIRE_THROWS_AS(CFlowMetric::from_arnold(std::numeric_limits<double>::infinity()),
                      std::invalid_argument);
}

TEST_CASE("mu is the natural logarithm of the base") {
    const CFlowMetric m(2.0, 3.0);
    REQUIRE(m.mu(Axis::p) == std::log(2.0));
    REQUIRE(m.mu(Axis::q) == std::log(3.0));
    REQUIRE(CFlowMetric(1.0, 1.0).mu(Axis::q) == 0.0);
}

TEST_CASE("scale factors follow the exponential law") {
    const CFlowMetric m(2.0, 3.0);
    REQUIRE(m.scale_factors(0.0) == std::array<double, 3>{1.0, 1.0, 1.0});
    REQUIRE(m.scale_factors(1.0) == std::array<double, 3>{2.0, 3.0, 1.0});

    // Arnold co-frame coefficients e^{-lambda z}, e^{lambda z}.
    const double lambda = 0.8;
    const CFlowMetric a = CFlowMetric::from_arnold(lambda);
    const auto h = a.scale_factors(0.4);
    REQUIRE_THAT(h[0], Catch::Matchers::WithinRel(std::exp(-lambda * 0.4), 1e-13));
    REQUIRE_THAT(h[1], Catch::Matchers::WithinRel(std::exp(lambda * 0.4), 1e-13));
    REQUIRE(h[2] == 1.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> base(0.3, 3.0);
    std::uniform_real_distribution<double> zdist(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const CFlowMetric r(base(rng), base(rng));
        const double z1 = zdist(rng);
        const double z2 = zdist(rng);
        const auto lhs = r.scale_factors(z1 + z2);
        const auto a1 = r.scale_factors(z1);
        const auto a2 = r.scale_factors(z2);
        for (int c = 0; c < 3; ++c)
            REQUIRE_THAT(lhs[c], Catch::Matchers::WithinRel(a1[c] * a2[c], 1e-12));
    }
}

TEST_CASE("beta evaluates and is symmetric under base swap") {
    REQUIRE(CFlowMetric(2.0, 3.0).beta() == -7.0);
    REQUIRE(CFlowMetric(0.5, 2.0).beta() == 0.5);
    REQUIRE(CFlowMetric(1.0, 1.0).beta() == 0.0);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> base(0.2, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double l1 = base(rng);
        const double l2 = base(rng);
        REQUIRE(CFlowMetric(l1, l2).beta() == CFlowMetric(l2, l1).beta());
    }
}

TEST_CASE("coordinate maps: forward examples") {
    const CFlowMetric m(2.0, 3.0);
    const auto pq = xy_to_pq(m, {1.0, 0.0});
    REQUIRE(pq.first == 2.0);
    REQUIRE(pq.second == 3.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> base(0.3, 3.0);
    for (int i = 0; i < 50; ++i) {
        const CFlowMetric r(base(rng), base(rng));
        const auto origin = xy_to_pq(r, {0.0, 0.0});
        REQUIRE(origin.first == 0.0);
        REQUIRE(origin.second == 0.0);
        // Row coefficients sum to one, so (1,1) is fixed.
        const auto ones = xy_to_pq(r, {1.0, 1.0});
        REQUIRE_THAT(ones.first, Catch::Matchers::WithinAbs(1.0, 1e-14));
        REQUIRE_THAT(ones.second, Catch::Matchers::WithinAbs(1.0, 1e-14));
    }
}

TEST_CASE("coordinate maps: inverse and degeneracy") {
    const CFlowMetric m(2.0, 3.0);
    const auto xy = pq_to_xy(m, {2.0, 3.0});
    REQUIRE_THAT(xy.first, Catch::Matchers::WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(xy.second, Catch::Matchers::WithinAbs(0.0, 1e-14));

    REQUIRE_THROWS_AS(pq_to_xy(CFlowMetric(1.0, 1.0), {0.3, 0.4}), std::domain_error);
    REQUIRE_THROWS_WITH(pq_to_xy(CFlowMetric(1.0, 1.0), {0.3, 0.4}),
                        Catch::Matchers::ContainsSubstring("beta"));

    const auto origin = pq_to_xy(m, {0.0, 0.0});
    REQUIRE(origin.first == 0.0);
    REQUIRE(origin.second == 0.0);
}

TEST_CASE("coordinate maps: 1000-point roundtrip") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> base(0.3, 3.0);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    int tested = 0;
    while (tested < 1000) {
        const CFlowMetric m(base(rng), base(rng));
        if (std::abs(m.beta()) <= 0.1) continue;
        if (std::abs(m.lambda1() - m.lambda2()) <= 0.05) continue;
        const CoordinatePair v{coord(rng), coord(rng)};
        const auto back = pq_to_xy(m, xy_to_pq(m, v));
        REQUIRE_THAT(back.first, Catch::Matchers::WithinAbs(v.first, 1e-12));
        REQUIRE_THAT(back.second, Catch::Matchers::WithinAbs(v.second, 1e-12));
        ++tested;
    }
}

TEST_CASE("cat map eigenvalues") {
    const auto [chi1, chi2] = cat_eigenvalues();
    REQUIRE_THAT(chi1, Catch::Matchers::WithinAbs(2.618033988749895, 1e-15));
    REQUIRE_THAT(chi2, Catch::Matchers::WithinAbs(0.3819660112501051, 1e-15));
    REQUIRE(chi1 > 1.0);
    REQUIRE(chi2 > 0.0);
    REQUIRE(chi2 < 1.0);
    REQUIRE_THAT(chi1 * chi2, Catch::Matchers::WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(chi1 + chi2, Catch::Matchers::WithinAbs(3.0, 1e-14));
}
