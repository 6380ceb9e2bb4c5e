#include "assoc/limit.hpp"

#include <algorithm>
#include <cmath>

#include "assoc/copula.hpp"
#include "assoc/errors.hpp"
#include "assoc/parallel.hpp"
#include "assoc/rng.hpp"

namespace assoc {

LimitCovariance limit_covariance_matrix(const GaussianLinearModel& model,
                                        const EvaluationGrid& grid, std::size_t k_max,
                                        double tail_tol) {
    if (!(tail_tol >= 0.0))
        throw std::invalid_argument("limit_covariance_matrix: tail_tol must be >= 0");

    LimitCovariance out;
    out.grid = grid;
    out.k_max = k_max;

    // Certified tail: dropped terms k > k_max contribute at most
    // 2 * 4 cov(X_0,X_k) each and vanish beyond the coefficient support.
    double tail = 0.0;
    for (std::size_t k = k_max + 1; k <= model.max_lag(); ++k)
        tail += 8.0 * uniform_pair_covariance(model.rho(k));
    out.tail_bound = tail;
    if (tail > tail_tol)
        throw truncation_error("limit_covariance_matrix: tail " + std::to_string(tail) +
                               " not certifiable below tail_tol at this k_max");

    const std::size_t g = grid.size();
    out.matrix.assign(g * g, 0.0);
    const std::size_t lags = std::min(k_max, model.max_lag());
    std::vector<double> rhos(lags + 1, 0.0);
    for (std::size_t k = 1; k <= lags; ++k) rhos[k] = model.rho(k);

    for (std::size_t i = 0; i < g; ++i) {
        const double x = grid.points[i];
        for (std::size_t j = i; j < g; ++j) {
            const double y = grid.points[j];
            double value = std::min(x, y) - x * y;
            for (std::size_t k = 1; k <= lags; ++k)
                value += 2.0 * (exact_gaussian_copula(x, y, rhos[k]) - x * y);
            out.matrix[i * g + j] = value;
            out.matrix[j * g + i] = value;
        }
    }
    return out;
}

namespace detail {

bool semidefinite_cholesky(std::vector<double>& a, std::size_t n, double pivot_tol) {
    // In-place lower Cholesky; a zero pivot zeroes its column, which is the
    // correct factor for a semidefinite matrix.
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (d < -pivot_tol) return false;
        if (d <= pivot_tol) {
            a[j * n + j] = 0.0;
            for (std::size_t i = j + 1; i < n; ++i) a[i * n + j] = 0.0;
            continue;
        }
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / ljj;
        }
    }
    // Zero the strict upper triangle so the result is a clean factor.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    return true;
}

}  // namespace detail

GaussianEnsemble sample_limit_process(const LimitCovariance& cov, std::size_t replicates,
                                      std::uint64_t seed, std::uint64_t stream_base,
                                      int threads) {
    if (replicates == 0)
        throw std::invalid_argument("sample_limit_process: replicates must be >= 1");
    const std::size_t g = cov.grid.size();
    if (cov.matrix.size() != g * g)
        throw std::invalid_argument("sample_limit_process: malformed covariance");

    double scale = 0.0;
    for (std::size_t i = 0; i < g; ++i) scale = std::max(scale, std::abs(cov.at(i, i)));
    const double pivot_tol = std::max(scale, 1.0) * 1e-14;

    // Jitter ladder: 0, then 1e-12 .. 1e-8 in factor-10 steps.
    std::vector<double> factor;
    double jitter_used = -1.0;
    for (double jitter : {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8}) {
        factor = cov.matrix;
        for (std::size_t i = 0; i < g; ++i) factor[i * g + i] += jitter;
        if (detail::semidefinite_cholesky(factor, g, pivot_tol)) {
            jitter_used = jitter;
            break;
        }
    }
    if (jitter_used < 0.0)
        throw not_psd_error("sample_limit_process: covariance not PSD within the jitter ladder");

    GaussianEnsemble out;
    out.grid = cov.grid;
    out.replicates = replicates;
    out.jitter_used = jitter_used;
    out.values.resize(replicates * g);
    parallel_for(replicates, threads, [&](std::size_t r) {
        rng::Stream stream(seed, rng::stream_id(stream_base, rng::Lane::gaussian, r));
        std::vector<double> xi(g);
        stream.fill_normal(xi);
        double* row = out.values.data() + r * g;
        for (std::size_t i = 0; i < g; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= i; ++k) s += factor[i * g + k] * xi[k];
            row[i] = s;
        }
    });
    return out;
}

}  // namespace assoc
