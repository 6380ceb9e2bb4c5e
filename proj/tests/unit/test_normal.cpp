#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "assoc/normal.hpp"
#include "assoc/rng.hpp"

using namespace assoc;

TEST_CASE("normal_cdf reference values and symmetry") {
    REQUIRE(normal_cdf(0.0) == 0.5);
    REQUIRE_THAT(normal_cdf(1.959963984540054), Catch::Matchers::WithinAbs(0.975, 1e-13));
    REQUIRE_THAT(normal_cdf(-1.0) + normal_cdf(1.0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE(normal_cdf(-40.0) >= 0.0);
    REQUIRE(normal_cdf(40.0) == 1.0);
}

TEST_CASE("normal_quantile: round trip against erfc across the domain") {
    // The quantile must invert the (libm-backed) cdf to ~1e-13 relative,
    // which is far inside the 1e-12 accuracy contract.
    for (double p = 1e-12; p < 1.0; p *= 3.7) {
        const double x = normal_quantile(p);
        REQUIRE_THAT(normal_cdf(x) / p, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    for (double p = 0.002; p < 0.999; p += 0.001) {
        const double x = normal_quantile(p);
        REQUIRE_THAT(normal_cdf(x), Catch::Matchers::WithinAbs(p, 1e-14));
    }
    REQUIRE(normal_quantile(0.5) == 0.0);
    REQUIRE_THAT(normal_quantile(0.975),
                 Catch::Matchers::WithinAbs(1.959963984540054, 1e-11));
    // Symmetry is exact by construction.
    REQUIRE(normal_quantile(0.1) == -normal_quantile(0.9));
}

TEST_CASE("normal_quantile domain errors") {
    REQUIRE_THROWS_AS(normal_quantile(0.0), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(1.0), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(-0.5), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(std::nan("")), std::domain_error);
}

TEST_CASE("adaptive integration sanity") {
    const double third = detail::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-13);
    REQUIRE_THAT(third, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-13));
    const double two = detail::integrate([](double x) { return std::sin(x); }, 0.0,
                                         std::numbers::pi, 1e-13);
    REQUIRE_THAT(two, Catch::Matchers::WithinAbs(2.0, 1e-12));
    REQUIRE(detail::integrate([](double) { return 1.0; }, 0.3, 0.3, 1e-13) == 0.0);
}

TEST_CASE("binormal_cdf: independence, comonotone, antithetic limits") {
    for (double h : {-1.5, -0.3, 0.0, 0.7, 2.1}) {
        for (double k : {-2.0, -0.4, 0.0, 1.1}) {
            REQUIRE_THAT(binormal_cdf(h, k, 0.0),
                         Catch::Matchers::WithinAbs(normal_cdf(h) * normal_cdf(k), 1e-14));
            REQUIRE_THAT(binormal_cdf(h, k, 1.0),
                         Catch::Matchers::WithinAbs(normal_cdf(std::min(h, k)), 1e-14));
            REQUIRE_THAT(
                binormal_cdf(h, k, -1.0),
                Catch::Matchers::WithinAbs(std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0),
                                           1e-14));
        }
    }
}

TEST_CASE("binormal_cdf: orthant identity to 1e-9") {
    for (double rho : {-0.99, -0.9, -0.5, -0.25, 0.0, 0.1, 0.5, 0.75, 0.9, 0.99}) {
        const double expected = 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
        REQUIRE_THAT(binormal_cdf(0.0, 0.0, rho), Catch::Matchers::WithinAbs(expected, 1e-11));
    }
}

TEST_CASE("binormal_cdf: symmetry, bounds, monotonicity in rho") {
    for (double h : {-1.0, 0.2, 1.3}) {
        for (double k : {-0.7, 0.5}) {
            double prev = -1.0;
            for (double rho = -0.95; rho <= 0.96; rho += 0.19) {
                const double v = binormal_cdf(h, k, rho);
                REQUIRE(v == binormal_cdf(k, h, rho));
                REQUIRE(v >= std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0) - 1e-12);
                REQUIRE(v <= std::min(normal_cdf(h), normal_cdf(k)) + 1e-12);
                REQUIRE(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
}

TEST_CASE("binormal_cdf: derivative in rho equals the bivariate density") {
    // Plackett's identity d/drho Phi2 = phi2(h,k;rho); a centered difference
    // of the quadrature must match the closed-form density.
    const double eps = 1e-5;
    for (double rho : {-0.6, 0.0, 0.35, 0.8}) {
        for (double h : {-0.9, 0.4}) {
            for (double k : {-0.2, 1.2}) {
                const double num =
                    (binormal_cdf(h, k, rho + eps) - binormal_cdf(h, k, rho - eps)) / (2.0 * eps);
                const double pdf = std::exp(binormal_logpdf(h, k, rho));
                REQUIRE_THAT(num, Catch::Matchers::WithinAbs(pdf, 1e-7));
            }
        }
    }
}

TEST_CASE("binormal_cdf: infinities and domain errors") {
    REQUIRE(binormal_cdf(std::numeric_limits<double>::infinity(), 0.3, 0.5) ==
            normal_cdf(0.3));
    REQUIRE(binormal_cdf(-std::numeric_limits<double>::infinity(), 0.3, 0.5) == 0.0);
    REQUIRE(binormal_cdf(std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(), -0.2) == 1.0);
    REQUIRE_THROWS_AS(binormal_cdf(std::nan(""), 0.0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(binormal_cdf(0.0, 0.0, 1.5), std::domain_error);
}

TEST_CASE("binormal_cdf agrees with a Monte Carlo oracle") {
    // 10^6 pairs at a single rho; the full 10^7-draw sweep over nine rhos is
    // acceptance criterion 7.
    const double rho = 0.6;
    const double h = 0.4, k = -0.3;
    rng::Stream stream(2024, rng::stream_id(0, rng::Lane::oracle, 0));
    const int n = 1000000;
    int hits = 0;
    const double lam = std::sqrt(1.0 - rho * rho);
    for (int i = 0; i < n; ++i) {
        const double z1 = stream.normal();
        const double z2 = rho * z1 + lam * stream.normal();
        hits += (z1 <= h && z2 <= k) ? 1 : 0;
    }
    const double est = static_cast<double>(hits) / n;
    const double p = binormal_cdf(h, k, rho);
    const double se = std::sqrt(p * (1.0 - p) / n);
    REQUIRE_THAT(est, Catch::Matchers::WithinAbs(p, 3.5 * se));
}

TEST_CASE("binormal_logpdf matches the explicit formula and rejects |rho|=1") {
    REQUIRE_THAT(std::exp(binormal_logpdf(0.0, 0.0, 0.0)),
                 Catch::Matchers::WithinAbs(1.0 / (2.0 * std::numbers::pi), 1e-15));
    REQUIRE_THROWS_AS(binormal_logpdf(0.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("kolmogorov law: shape, branch seam, tail values") {
    REQUIRE(kolmogorov_cdf(0.0) == 0.0);
    REQUIRE(kolmogorov_cdf(0.05) < 1e-12);
    REQUIRE_THAT(kolmogorov_cdf(10.0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    double prev = 0.0;
    for (double x = 0.1; x < 3.0; x += 0.05) {
        const double v = kolmogorov_cdf(x);
        REQUIRE(v >= prev);
        prev = v;
    }
    // The two series agree where the implementation switches branch.
    REQUIRE_THAT(kolmogorov_cdf(std::nextafter(1.0, 0.0)),
                 Catch::Matchers::WithinAbs(kolmogorov_cdf(1.0), 1e-12));
    // 5% critical value from the alternating series, cross-checked against
    // the ks_critical_value closed form.
    const double c05 = ks_critical_value(0.05, 1.0);
    REQUIRE_THAT(kolmogorov_cdf(c05), Catch::Matchers::WithinAbs(0.95, 1e-5));
}

TEST_CASE("ks_critical_value closed form") {
    REQUIRE_THAT(ks_critical_value(0.01, 100.0),
                 Catch::Matchers::WithinAbs(std::sqrt(-std::log(0.005) / 2.0) / 10.0, 1e-15));
    REQUIRE_THROWS_AS(ks_critical_value(0.0, 10.0), std::domain_error);
    REQUIRE_THROWS_AS(ks_critical_value(0.5, 0.0), std::domain_error);
}
