#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "assoc/errors.hpp"
#include "assoc/model.hpp"
#include "assoc/sample.hpp"
#include "assoc/stats.hpp"

using namespace assoc;

TEST_CASE("sampling is deterministic bit for bit") {
    const auto m = build_gaussian_linear_model_power_law(3.0, 32);
    const auto a = sample_paths(m, uniform01_marginal(), 257, 4, 1234);
    const auto b = sample_paths(m, uniform01_marginal(), 257, 4, 1234);
    REQUIRE(a.uniforms == b.uniforms);
    const auto c = sample_paths(m, uniform01_marginal(), 257, 4, 1235);
    REQUIRE(a.uniforms != c.uniforms);
}

TEST_CASE("thread count does not change the ensemble") {
    const auto m = build_gaussian_linear_model_ar1(0.5, 64);
    const auto one = sample_paths(m, uniform01_marginal(), 128, 6, 42, 0, 1);
    const auto two = sample_paths(m, uniform01_marginal(), 128, 6, 42, 0, 2);
    const auto four = sample_paths(m, uniform01_marginal(), 128, 6, 42, 0, 4);
    REQUIRE(one.uniforms == two.uniforms);
    REQUIRE(one.uniforms == four.uniforms);
}

TEST_CASE("replicate streams compose: split runs equal one run") {
    const auto m = build_gaussian_linear_model_iid();
    const auto whole = sample_paths(m, uniform01_marginal(), 64, 8, 7, 0);
    const auto first = sample_paths(m, uniform01_marginal(), 64, 4, 7, 0);
    const auto second = sample_paths(m, uniform01_marginal(), 64, 4, 7, 4);
    std::vector<double> merged = first.uniforms;
    merged.insert(merged.end(), second.uniforms.begin(), second.uniforms.end());
    REQUIRE(whole.uniforms == merged);
}

TEST_CASE("iid ensemble mean lies in the law-of-large-numbers band") {
    const auto m = build_gaussian_linear_model_iid();
    const std::size_t n = 100000;
    const auto e = sample_paths(m, uniform01_marginal(), n, 1, 2021);
    double mean = 0.0;
    for (double v : e.uniforms) mean += v;
    mean /= static_cast<double>(n);
    const double band = 3.0 / std::sqrt(12.0 * static_cast<double>(n));
    REQUIRE_THAT(mean, Catch::Matchers::WithinAbs(0.5, band));
}

TEST_CASE("lag-1 covariance matches the closed form") {
    const auto m = build_gaussian_linear_model_power_law(3.0, 64);
    const std::size_t n = 2000, r = 50;
    const auto e = sample_paths(m, uniform01_marginal(), n, r, 99);
    std::vector<double> rows(r * 3);
    for (std::size_t rep = 0; rep < r; ++rep) {
        const auto x = e.uniform_row(rep);
        double s01 = 0, s0 = 0, s1 = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            s01 += x[i] * x[i + 1];
            s0 += x[i];
            s1 += x[i + 1];
        }
        const double inv = 1.0 / static_cast<double>(n - 1);
        rows[rep * 3 + 0] = s01 * inv;
        rows[rep * 3 + 1] = s0 * inv;
        rows[rep * 3 + 2] = s1 * inv;
    }
    const MeanSe cov = jackknife_transformed_mean(
        rows, 3, [](std::span<const double> v) { return v[0] - v[1] * v[2]; });
    const double expected = uniform_pair_covariance(m.rho(1));
    REQUIRE_THAT(cov.value, Catch::Matchers::WithinAbs(expected, 3.0 * cov.se));
}

TEST_CASE("pooled marginal passes the Kolmogorov-Smirnov screen") {
    const auto m = build_gaussian_linear_model_ar1(0.3, 64);
    const std::size_t n = 10000, r = 10;
    const auto e = sample_paths(m, uniform01_marginal(), n, r, 314);
    std::vector<double> pooled = e.uniforms;
    std::sort(pooled.begin(), pooled.end());
    double d = 0.0;
    const double total = static_cast<double>(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        const double fn_hi = static_cast<double>(i + 1) / total;
        const double fn_lo = static_cast<double>(i) / total;
        d = std::max(d, std::max(std::abs(fn_hi - pooled[i]), std::abs(pooled[i] - fn_lo)));
    }
    // 1% critical value; dependence within paths is mild at phi = 0.3 and
    // the replicates are independent.
    REQUIRE(d < 1.63 / std::sqrt(total) * 1.8);
}

TEST_CASE("stationarity: lagged covariance does not depend on the time origin") {
    const auto m = build_gaussian_linear_model_power_law(3.0, 32);
    const std::size_t n = 160, r = 4000;
    const auto e = sample_paths(m, uniform01_marginal(), n, r, 555);
    for (const std::size_t k : {std::size_t{1}, std::size_t{3}}) {
        for (const std::size_t base : {std::size_t{0}, std::size_t{77}}) {
            std::vector<double> rows(r * 3);
            for (std::size_t rep = 0; rep < r; ++rep) {
                const auto x = e.uniform_row(rep);
                rows[rep * 3 + 0] = x[base] * x[base + k];
                rows[rep * 3 + 1] = x[base];
                rows[rep * 3 + 2] = x[base + k];
            }
            const MeanSe cov = jackknife_transformed_mean(
                rows, 3, [](std::span<const double> v) { return v[0] - v[1] * v[2]; });
            const double expected = uniform_pair_covariance(m.rho(k));
            REQUIRE_THAT(cov.value, Catch::Matchers::WithinAbs(expected, 4.0 * cov.se));
        }
    }
}

TEST_CASE("continuous marginal: inverse transform and exact pre-image") {
    const auto m = build_gaussian_linear_model_iid();
    const auto marginal = exponential_marginal(1.0);
    const auto path = sample_path(m, marginal, 1000, 77);
    REQUIRE(path.values.size() == path.uniforms.size());
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        REQUIRE(path.values[i] == -std::log1p(-path.uniforms[i]));
        // The numeric round trip F(F^{-1}(u)) reproduces u to ulp level,
        // which is what makes the stored pre-image the honest U = F(X).
        REQUIRE_THAT(marginal.cdf(path.values[i]),
                     Catch::Matchers::WithinAbs(path.uniforms[i], 4e-16));
    }
    REQUIRE(path.marginal_scale().data() == path.values.data());
    REQUIRE(path.uniform_scale().data() == path.uniforms.data());
}

TEST_CASE("uniform01 paths alias their uniform scale") {
    const auto m = build_gaussian_linear_model_iid();
    const auto path = sample_path(m, uniform01_marginal(), 16, 5);
    REQUIRE(path.values.empty());
    REQUIRE(path.marginal_scale().data() == path.uniforms.data());
    for (double u : path.uniforms) {
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("capacity and parameter errors") {
    const auto m = build_gaussian_linear_model_iid();
    REQUIRE_THROWS_AS(sample_paths(m, uniform01_marginal(), 0, 1, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(sample_paths(m, uniform01_marginal(), 1, 0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(sample_paths(m, uniform01_marginal(), std::size_t{1} << 30, 512, 1),
                      capacity_error);
}

TEST_CASE("ensemble binary persistence round trip") {
    const auto m = build_gaussian_linear_model_ar1(0.5, 16);
    const auto e = sample_paths(m, uniform01_marginal(), 64, 3, 2718);
    const auto path = std::filesystem::temp_directory_path() / "assoc_ensemble_test.bin";
    save_ensemble(e, path.string());
    const auto loaded = load_ensemble(path.string());
    REQUIRE(loaded.n == e.n);
    REQUIRE(loaded.replicates == e.replicates);
    REQUIRE(loaded.seed == e.seed);
    REQUIRE(loaded.uniforms == e.uniforms);
    std::filesystem::remove(path);
    REQUIRE_THROWS_AS(load_ensemble((path.parent_path() / "missing.bin").string()), io_error);
}

TEST_CASE("exponential marginal spec") {
    const auto marg = exponential_marginal(2.0);
    REQUIRE(*marg.density_bound == 2.0);
    REQUIRE(marg.finite_variance);
    REQUIRE_THAT(marg.cdf(marg.quantile(0.3)), Catch::Matchers::WithinAbs(0.3, 1e-15));
    REQUIRE(marg.cdf(0.0) == 0.0);
    REQUIRE_THROWS_AS(exponential_marginal(0.0), std::invalid_argument);
}
