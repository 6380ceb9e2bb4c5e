#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "assoc/copula.hpp"
#include "assoc/model.hpp"
#include "assoc/sample.hpp"

// Checks of the dependence hypotheses: SI via copula concavity, TP2 via the
// log-density mixed partial, the factor-4 indicator covariance bound, the
// association definition probed on sampled ensembles, and the Lipschitz-
// marginal covariance inequality. Each check reduces to a worst violation
// against an explicit tolerance.

namespace assoc {

struct DependenceReport {
    std::string check;
    double worst_violation = 0.0;
    std::array<std::size_t, 2> location{0, 0};
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, double>> details;
};

// SI(X|Y) for continuous marginals is equivalent to v -> C(u,v) being
// concave for every u. worst_violation is the largest second difference
// C(u, v-h) - 2 C(u,v) + C(u, v+h) over the grid (positive = convex bump).
DependenceReport si_concavity_report(const CopulaGrid& copula, double tolerance = 1e-8);

// Mixed second differences of the bivariate normal log density on
// [-H, H]^2; the analytic value is the constant rho / (1 - rho^2). Passes
// when the minimum mixed difference stays above -tolerance.
DependenceReport tp2_report(double rho, double half_width, std::size_t resolution,
                            double tolerance = 1e-8);

// |cov(1{X_0<=u1}, 1{X_k<=u2})| <= 4 cov(X_0, X_k), checked exactly through
// the Gaussian copula for every k <= k_max on an interior grid of
// grid_m x grid_m points u = i/(grid_m+1).
DependenceReport indicator_covariance_check(const GaussianLinearModel& model, std::size_t k_max,
                                            std::size_t grid_m, double tolerance = 1e-10);

struct AssociationProbeOptions {
    std::vector<double> thresholds{0.25, 0.5, 0.75};
    std::vector<std::size_t> lags{1, 2, 5};
    std::vector<std::size_t> block_lags{2, 5};  // distance between 2-blocks
    double se_multiplier = 3.0;
};

// Estimates cov(f(block I), g(block J)) for bounded nondecreasing f, g over
// disjoint index blocks (upper indicators, identity, pairwise products) and
// fails when any estimate drops below -se_multiplier standard errors.
DependenceReport association_probe(const PathEnsemble& ensemble,
                                   const AssociationProbeOptions& options = {});

// cov(F(X_0), F(X_k)) <= a^2 cov(X_0, X_k) + se_multiplier * SE for all
// k <= k_max, estimated by Monte Carlo on both scales of the ensemble.
DependenceReport marginal_covariance_bound_check(const PathEnsemble& ensemble, std::size_t k_max,
                                                 double se_multiplier = 3.0);

}  // namespace assoc
