#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "assoc/grid.hpp"
#include "assoc/sample.hpp"
#include "assoc/stats.hpp"

// The empirical process of a uniform01 path,
//   G_n(x) = n^{-1/2} sum_i (1{X_i <= x} - x),
// its grid evaluations, increment moments, and the moment-bound machinery.
// Paths with continuous marginals enter through their uniform-scale
// pre-image (probability integral transform), so a single uniform01 code
// path covers every marginal.

namespace assoc {

struct EmpiricalProcessSample {
    EvaluationGrid grid;
    std::vector<double> values;  // G_n at each grid point
    std::size_t n = 0;
    std::uint64_t replicate = 0;
};

// Sort + single merge sweep: O(n log n + |grid|).
EmpiricalProcessSample compute_empirical_process(std::span<const double> uniform_path,
                                                 const EvaluationGrid& grid);

// G_n at arbitrary coordinates without sorting (one counting pass; used on
// hot paths with few coordinates). Matches compute_empirical_process exactly.
void empirical_process_at(std::span<const double> uniform_path, std::span<const double> coords,
                          std::span<double> out);

double sup_norm_statistic(const EmpiricalProcessSample& sample);

// Replicate-stacked grid evaluations of G_n.
struct ProcessEnsemble {
    EvaluationGrid grid;
    std::size_t n = 0;
    std::size_t replicates = 0;
    std::vector<double> values;  // replicates x grid.size(), row-major

    double at(std::size_t r, std::size_t g) const { return values[r * grid.size() + g]; }
    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * grid.size(), grid.size()};
    }
};

ProcessEnsemble compute_process_ensemble(const GaussianLinearModel& model, std::size_t n,
                                         std::size_t replicates, std::uint64_t seed,
                                         std::uint64_t stream_base, const EvaluationGrid& grid,
                                         int threads = 0);

ProcessEnsemble compute_process_ensemble(const PathEnsemble& ensemble,
                                         const EvaluationGrid& grid, int threads = 0);

// Lemma-1 parameter tuple; invariants enforced on construction.
struct MomentBoundParams {
    double p;      // > 2
    double nu;     // > 0
    double alpha;  // > 1
    double c;      // > 0
    double k;      // >= 0

    MomentBoundParams(double p, double nu, double alpha, double c = 1.0, double k = 1.0);
};

// K (n^{(p/2-alpha) v (1+nu-p/2)} + |t-s|^{(1-1/alpha) p/2}).
double lemma1_bound_value(const MomentBoundParams& params, std::size_t n, double s, double t);

struct MomentEstimate {
    double value = 0.0;
    double se = 0.0;
    std::size_t replicates = 0;
};

// Monte Carlo mean of |G_n(t) - G_n(s)|^p across replicates with jackknife
// SE. s and t must be grid points of the ensemble.
MomentEstimate increment_moment_estimate(const ProcessEnsemble& ensemble, double s, double t,
                                         double p);

struct MomentCell {
    std::size_t n = 0;
    double s = 0.0;
    double t = 0.0;
    double p = 0.0;
    double estimate = 0.0;
    double se = 0.0;
};

struct BoundFitRow {
    std::size_t n;
    double s, t, p;
    double estimate, se;
    double bracket, ratio;
};

struct BoundFit {
    double k_hat = 0.0;
    std::vector<BoundFitRow> table;

    // Max ratio restricted to one sample size.
    double k_hat_for(std::size_t n) const;
};

// K_hat = max over cells of estimate / bracket, where
// bracket = n^{(p/2-alpha) v (1+nu-p/2)} + (t-s)^{(1-1/alpha) p/2}.
BoundFit fit_bound_constant(std::span<const MomentCell> cells, double p, double nu, double alpha);

struct ModulusStats {
    int k = 0;
    double value = 0.0;  // M_k = sup over the 2^-k lattice of |G_n(t) - G_n(t - 2^-k)|
    std::size_t n = 0;
};

// Exact lattice increments at scale 2^-k; the sample grid must refine
// dyadic(k).
ModulusStats dyadic_modulus(const EmpiricalProcessSample& sample, int k);

}  // namespace assoc
