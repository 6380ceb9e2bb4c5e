#include "assoc/copula.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "assoc/errors.hpp"
#include "assoc/normal.hpp"

namespace assoc {

double exact_gaussian_copula(double u, double v, double rho) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        throw std::domain_error("exact_gaussian_copula: u, v must lie in [0,1]");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("exact_gaussian_copula: |rho| must be <= 1");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    return binormal_cdf(normal_quantile(u), normal_quantile(v), rho);
}

CopulaGrid CopulaGrid::gaussian(double rho, std::size_t resolution) {
    if (resolution < 1) throw std::invalid_argument("CopulaGrid: resolution must be >= 1");
    CopulaGrid g;
    g.resolution = resolution;
    const std::size_t m1 = resolution + 1;
    g.values.resize(m1 * m1);
    // Quantiles are reused across the grid; the copula itself is evaluated
    // pointwise.
    std::vector<double> q(m1);
    for (std::size_t i = 1; i < resolution; ++i)
        q[i] = normal_quantile(static_cast<double>(i) / resolution);
    for (std::size_t i = 0; i < m1; ++i) {
        const double u = g.point(i);
        for (std::size_t j = 0; j < m1; ++j) {
            const double v = g.point(j);
            double c;
            if (i == 0 || j == 0)
                c = 0.0;
            else if (i == resolution)
                c = v;
            else if (j == resolution)
                c = u;
            else
                c = binormal_cdf(q[i], q[j], rho);
            g.values[i * m1 + j] = c;
        }
    }
    return g;
}

CopulaGrid empirical_copula(std::span<const double> x, std::span<const double> y,
                            std::size_t resolution) {
    if (x.empty() || y.empty()) throw empty_input_error("empirical_copula: empty sample");
    if (x.size() != y.size())
        throw std::invalid_argument("empirical_copula: x and y must have equal length");
    if (resolution < 1) throw std::invalid_argument("empirical_copula: resolution must be >= 1");
    const std::size_t n = x.size();
    if (n < resolution)
        throw std::invalid_argument("empirical_copula: need sample size >= resolution");

    // Ranks 1..N with stable tie-breaking by original index.
    const auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<std::size_t> rank(n);
        for (std::size_t pos = 0; pos < n; ++pos) rank[order[pos]] = pos + 1;
        return rank;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);

    // rank/N <= a/M  <=>  a >= ceil(rank*M/N); bucket each pair at its
    // minimal grid cell, then take the 2-d cumulative sum.
    const std::size_t m1 = resolution + 1;
    std::vector<double> hist(m1 * m1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t gx = (rx[i] * resolution + n - 1) / n;
        const std::size_t gy = (ry[i] * resolution + n - 1) / n;
        if (gx < m1 && gy < m1) hist[gx * m1 + gy] += 1.0;
    }
    CopulaGrid g;
    g.resolution = resolution;
    g.values.assign(m1 * m1, 0.0);
    for (std::size_t i = 1; i < m1; ++i)
        for (std::size_t j = 1; j < m1; ++j)
            g.values[i * m1 + j] = hist[i * m1 + j] + g.values[(i - 1) * m1 + j] +
                                   g.values[i * m1 + (j - 1)] -
                                   g.values[(i - 1) * m1 + (j - 1)];
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : g.values) v *= inv_n;
    return g;
}

}  // namespace assoc
