#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "assoc/grid.hpp"
#include "assoc/model.hpp"

// The limit covariance of the empirical process,
//   Gamma(x,y) = sum_{k in Z} cov(1{X_0<=x}, 1{X_k<=y})
//             = [min(x,y) - xy] + 2 sum_{k>=1} [C_{rho_k}(x,y) - xy],
// (the Gaussian copula is symmetric and the latent process reversible, so
// the k and -k terms coincide), plus exact sampling of the centered
// Gaussian limit on a grid.

namespace assoc {

struct LimitCovariance {
    EvaluationGrid grid;
    std::vector<double> matrix;  // symmetric, grid.size()^2 row-major
    std::size_t k_max = 0;
    double tail_bound = 0.0;

    double at(std::size_t i, std::size_t j) const { return matrix[i * grid.size() + j]; }
};

// Truncates the series at k_max and certifies the tail through the
// indicator bound: each dropped term is at most 4 cov(X_0,X_k), which is
// exactly zero beyond the coefficient support. Throws truncation_error when
// the certified tail exceeds tail_tol.
LimitCovariance limit_covariance_matrix(const GaussianLinearModel& model,
                                        const EvaluationGrid& grid, std::size_t k_max,
                                        double tail_tol);

struct GaussianEnsemble {
    EvaluationGrid grid;
    std::size_t replicates = 0;
    std::vector<double> values;  // replicates x grid.size(), row-major
    double jitter_used = 0.0;

    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * grid.size(), grid.size()};
    }
    double at(std::size_t r, std::size_t g) const { return values[r * grid.size() + g]; }
};

// R independent draws of N(0, cov) via a semidefinite-tolerant Cholesky
// factorization; a diagonal jitter ladder 1e-12..1e-8 repairs truncation
// noise, beyond which not_psd_error is thrown. Replicate r uses stream
// (seed, stream_base + gaussian lane + r).
GaussianEnsemble sample_limit_process(const LimitCovariance& cov, std::size_t replicates,
                                      std::uint64_t seed, std::uint64_t stream_base = 0,
                                      int threads = 0);

namespace detail {
// Lower-triangular factor with L L^T ~= A (n x n row-major); zero pivots are
// tolerated (semidefinite input), negative pivots below -pivot_tol fail.
// Returns false on failure.
bool semidefinite_cholesky(std::vector<double>& a, std::size_t n, double pivot_tol);
}  // namespace detail

}  // namespace assoc
