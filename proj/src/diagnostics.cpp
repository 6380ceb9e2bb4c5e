#include "assoc/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "assoc/errors.hpp"
#include "assoc/normal.hpp"
#include "assoc/stats.hpp"

namespace assoc {

DependenceReport si_concavity_report(const CopulaGrid& copula, double tolerance) {
    const std::size_t m = copula.resolution;
    if (m < 3) throw std::invalid_argument("si_concavity_report: resolution must be >= 3");
    DependenceReport rep;
    rep.check = "si_concavity";
    rep.tolerance = tolerance;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 1; j < m; ++j) {
            const double d2 = copula.at(i, j - 1) - 2.0 * copula.at(i, j) + copula.at(i, j + 1);
            if (d2 > worst) {
                worst = d2;
                rep.location = {i, j};
            }
        }
    }
    rep.worst_violation = worst;
    rep.pass = worst <= tolerance;
    return rep;
}

DependenceReport tp2_report(double rho, double half_width, std::size_t resolution,
                            double tolerance) {
    if (std::abs(rho) >= 1.0)
        throw std::domain_error("tp2_report: density degenerate at |rho| = 1");
    if (!(half_width > 0.0)) throw std::invalid_argument("tp2_report: half_width must be > 0");
    if (resolution < 1) throw std::invalid_argument("tp2_report: resolution must be >= 1");

    const double h = 2.0 * half_width / static_cast<double>(resolution);
    const auto grid_point = [&](std::size_t a) { return -half_width + h * static_cast<double>(a); };

    DependenceReport rep;
    rep.check = "tp2";
    rep.tolerance = tolerance;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < resolution; ++a) {
        for (std::size_t b = 0; b < resolution; ++b) {
            const double x0 = grid_point(a), x1 = grid_point(a + 1);
            const double y0 = grid_point(b), y1 = grid_point(b + 1);
            const double mixed = (binormal_logpdf(x1, y1, rho) - binormal_logpdf(x1, y0, rho) -
                                  binormal_logpdf(x0, y1, rho) + binormal_logpdf(x0, y0, rho)) /
                                 (h * h);
            if (mixed < lo) {
                lo = mixed;
                rep.location = {a, b};
            }
            hi = std::max(hi, mixed);
        }
    }
    rep.worst_violation = -lo;
    rep.pass = rep.worst_violation <= tolerance;
    rep.details.emplace_back("min_mixed_partial", lo);
    rep.details.emplace_back("max_mixed_partial", hi);
    rep.details.emplace_back("analytic_mixed_partial", rho / (1.0 - rho * rho));
    return rep;
}

DependenceReport indicator_covariance_check(const GaussianLinearModel& model, std::size_t k_max,
                                            std::size_t grid_m, double tolerance) {
    if (grid_m < 1) throw std::invalid_argument("indicator_covariance_check: grid_m must be >= 1");
    DependenceReport rep;
    rep.check = "indicator_covariance";
    rep.tolerance = tolerance;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_k = 0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double rho = model.rho(k);
        const double bound = 4.0 * uniform_pair_covariance(rho);
        for (std::size_t i = 1; i <= grid_m; ++i) {
            const double u1 = static_cast<double>(i) / static_cast<double>(grid_m + 1);
            for (std::size_t j = 1; j <= grid_m; ++j) {
                const double u2 = static_cast<double>(j) / static_cast<double>(grid_m + 1);
                const double lhs = std::abs(exact_gaussian_copula(u1, u2, rho) - u1 * u2);
                const double violation = lhs - bound;
                if (violation > worst) {
                    worst = violation;
                    worst_k = k;
                    rep.location = {i, j};
                }
            }
        }
    }
    rep.worst_violation = worst;
    rep.pass = worst <= tolerance;
    rep.details.emplace_back("worst_k", static_cast<double>(worst_k));
    rep.details.emplace_back("k_max", static_cast<double>(k_max));
    return rep;
}

namespace {

struct ProbeFunction {
    enum class Kind { upper_indicator, identity, pair_upper };
    Kind kind = Kind::identity;
    double threshold = 0.5;
    std::size_t span = 1;  // block width

    double eval(const double* x) const {
        switch (kind) {
            case Kind::upper_indicator: return x[0] > threshold ? 1.0 : 0.0;
            case Kind::identity: return x[0];
            case Kind::pair_upper:
                return (x[0] > threshold && x[1] > threshold) ? 1.0 : 0.0;
        }
        return 0.0;
    }
};

struct Probe {
    ProbeFunction f, g;
    std::size_t lag = 1;  // distance between block starts
};

}  // namespace

DependenceReport association_probe(const PathEnsemble& ensemble,
                                   const AssociationProbeOptions& options) {
    if (ensemble.replicates < 2)
        throw need_replicates_error("association_probe: need at least 2 replicates");

    std::vector<ProbeFunction> singles;
    for (double c : options.thresholds)
        singles.push_back({ProbeFunction::Kind::upper_indicator, c, 1});
    singles.push_back({ProbeFunction::Kind::identity, 0.0, 1});

    std::vector<Probe> probes;
    for (std::size_t lag : options.lags)
        for (const auto& f : singles)
            for (const auto& g : singles) probes.push_back({f, g, lag});
    for (std::size_t lag : options.block_lags)
        probes.push_back({{ProbeFunction::Kind::pair_upper, 0.5, 2},
                          {ProbeFunction::Kind::pair_upper, 0.5, 2},
                          lag});

    for (const auto& probe : probes) {
        const std::size_t need = probe.lag + probe.g.span;
        if (ensemble.n < need)
            throw std::invalid_argument("association_probe: ensemble paths too short for blocks");
    }

    DependenceReport rep;
    rep.check = "association_probe";
    rep.tolerance = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    double min_t = std::numeric_limits<double>::infinity();
    std::vector<double> rows;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const auto& probe = probes[pi];
        const std::size_t window = probe.lag + probe.g.span - 1;
        const std::size_t terms = ensemble.n - window;
        rows.assign(ensemble.replicates * 3, 0.0);
        for (std::size_t r = 0; r < ensemble.replicates; ++r) {
            const auto x = ensemble.uniform_row(r);
            double sf = 0.0, sg = 0.0, sfg = 0.0;
            for (std::size_t i = 0; i < terms; ++i) {
                const double fv = probe.f.eval(&x[i]);
                const double gv = probe.g.eval(&x[i + probe.lag]);
                sf += fv;
                sg += gv;
                sfg += fv * gv;
            }
            const double inv = 1.0 / static_cast<double>(terms);
            rows[r * 3 + 0] = sfg * inv;
            rows[r * 3 + 1] = sf * inv;
            rows[r * 3 + 2] = sg * inv;
        }
        const MeanSe cov = jackknife_transformed_mean(
            rows, 3, [](std::span<const double> m) { return m[0] - m[1] * m[2]; });
        const double violation = -(cov.value + options.se_multiplier * cov.se);
        if (violation > worst) {
            worst = violation;
            rep.location = {pi, probe.lag};
            rep.details.clear();
            rep.details.emplace_back("worst_estimate", cov.value);
            rep.details.emplace_back("worst_se", cov.se);
        }
        if (cov.se > 0.0) min_t = std::min(min_t, cov.value / cov.se);
    }
    rep.worst_violation = worst;
    rep.pass = worst <= 0.0;
    rep.details.emplace_back("probes", static_cast<double>(probes.size()));
    rep.details.emplace_back("min_t_ratio", min_t);
    return rep;
}

DependenceReport marginal_covariance_bound_check(const PathEnsemble& ensemble, std::size_t k_max,
                                                 double se_multiplier) {
    const auto& marginal = ensemble.marginal;
    if (!marginal.density_bound.has_value())
        throw unsupported_marginal_error(
            "marginal_covariance_bound_check: marginal lacks a density bound");
    if (!marginal.finite_variance)
        throw unsupported_marginal_error(
            "marginal_covariance_bound_check: marginal has infinite variance");
    if (ensemble.replicates < 2)
        throw need_replicates_error("marginal_covariance_bound_check: need >= 2 replicates");
    if (ensemble.n <= k_max)
        throw std::invalid_argument("marginal_covariance_bound_check: paths shorter than k_max");

    const double a2 = *marginal.density_bound * *marginal.density_bound;
    DependenceReport rep;
    rep.check = "marginal_covariance_bound";
    rep.tolerance = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> rows;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const std::size_t terms = ensemble.n - k;
        rows.assign(ensemble.replicates * 6, 0.0);
        for (std::size_t r = 0; r < ensemble.replicates; ++r) {
            const auto u = ensemble.uniform_row(r);
            const auto x = ensemble.value_row(r);
            double suu = 0.0, su0 = 0.0, suk = 0.0, sxx = 0.0, sx0 = 0.0, sxk = 0.0;
            for (std::size_t i = 0; i < terms; ++i) {
                suu += u[i] * u[i + k];
                su0 += u[i];
                suk += u[i + k];
                sxx += x[i] * x[i + k];
                sx0 += x[i];
                sxk += x[i + k];
            }
            const double inv = 1.0 / static_cast<double>(terms);
            double* row = rows.data() + r * 6;
            row[0] = suu * inv;
            row[1] = su0 * inv;
            row[2] = suk * inv;
            row[3] = sxx * inv;
            row[4] = sx0 * inv;
            row[5] = sxk * inv;
        }
        const MeanSe diff = jackknife_transformed_mean(
            rows, 6, [a2](std::span<const double> m) {
                return (m[0] - m[1] * m[2]) - a2 * (m[3] - m[4] * m[5]);
            });
        const double violation = diff.value - se_multiplier * diff.se;
        if (violation > worst) {
            worst = violation;
            rep.location = {k, 0};
            rep.details.clear();
            rep.details.emplace_back("worst_lhs_minus_rhs", diff.value);
            rep.details.emplace_back("worst_se", diff.se);
        }
    }
    rep.worst_violation = worst;
    rep.pass = worst <= 0.0;
    rep.details.emplace_back("k_max", static_cast<double>(k_max));
    rep.details.emplace_back("density_bound", *marginal.density_bound);
    return rep;
}

}  // namespace assoc
