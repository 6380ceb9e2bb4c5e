#include "assoc/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "assoc/errors.hpp"
#include "assoc/kernels.hpp"
#include "assoc/parallel.hpp"

namespace assoc {

EmpiricalProcessSample compute_empirical_process(std::span<const double> uniform_path,
                                                 const EvaluationGrid& grid) {
    if (uniform_path.empty()) throw empty_input_error("compute_empirical_process: empty path");
    const std::size_t n = uniform_path.size();
    std::vector<double> sorted(uniform_path.begin(), uniform_path.end());
    std::sort(sorted.begin(), sorted.end());

    EmpiricalProcessSample out;
    out.grid = grid;
    out.n = n;
    out.values.resize(grid.size());
    const double root_n = std::sqrt(static_cast<double>(n));
    std::size_t idx = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double x = grid.points[g];
        while (idx < n && sorted[idx] <= x) ++idx;
        out.values[g] = (static_cast<double>(idx) - static_cast<double>(n) * x) / root_n;
    }
    return out;
}

void empirical_process_at(std::span<const double> uniform_path, std::span<const double> coords,
                          std::span<double> out) {
    if (uniform_path.empty()) throw empty_input_error("empirical_process_at: empty path");
    if (coords.size() != out.size())
        throw std::invalid_argument("empirical_process_at: size mismatch");
    const std::size_t n = uniform_path.size();
    std::vector<std::uint64_t> counts(coords.size());
    kernels::count_le_multi(uniform_path.data(), n, coords.data(), coords.size(), counts.data());
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < coords.size(); ++k)
        out[k] = (static_cast<double>(counts[k]) - static_cast<double>(n) * coords[k]) / root_n;
}

double sup_norm_statistic(const EmpiricalProcessSample& sample) {
    if (sample.values.empty()) throw empty_input_error("sup_norm_statistic: empty sample");
    double m = 0.0;
    for (double v : sample.values) m = std::max(m, std::abs(v));
    return m;
}

ProcessEnsemble compute_process_ensemble(const GaussianLinearModel& model, std::size_t n,
                                         std::size_t replicates, std::uint64_t seed,
                                         std::uint64_t stream_base, const EvaluationGrid& grid,
                                         int threads) {
    ProcessEnsemble out;
    out.grid = grid;
    out.n = n;
    out.replicates = replicates;
    out.values.resize(replicates * grid.size());
    for_each_path(model, n, replicates, seed, stream_base, threads,
                  [&](std::size_t r, std::span<const double> path) {
                      auto sample = compute_empirical_process(path, grid);
                      std::copy(sample.values.begin(), sample.values.end(),
                                out.values.begin() + r * grid.size());
                  });
    return out;
}

ProcessEnsemble compute_process_ensemble(const PathEnsemble& ensemble,
                                         const EvaluationGrid& grid, int threads) {
    ProcessEnsemble out;
    out.grid = grid;
    out.n = ensemble.n;
    out.replicates = ensemble.replicates;
    out.values.resize(ensemble.replicates * grid.size());
    parallel_for(ensemble.replicates, threads, [&](std::size_t r) {
        auto sample = compute_empirical_process(ensemble.uniform_row(r), grid);
        std::copy(sample.values.begin(), sample.values.end(),
                  out.values.begin() + r * grid.size());
    });
    return out;
}

MomentBoundParams::MomentBoundParams(double p_, double nu_, double alpha_, double c_, double k_)
    : p(p_), nu(nu_), alpha(alpha_), c(c_), k(k_) {
    if (!(p > 2.0)) throw std::invalid_argument("MomentBoundParams: p must be > 2");
    if (!(nu > 0.0)) throw std::invalid_argument("MomentBoundParams: nu must be > 0");
    if (!(alpha > 1.0)) throw std::invalid_argument("MomentBoundParams: alpha must be > 1");
    if (!(c > 0.0)) throw std::invalid_argument("MomentBoundParams: C must be > 0");
    if (!(k >= 0.0)) throw std::invalid_argument("MomentBoundParams: K must be >= 0");
}

namespace {

double bracket_value(double p, double nu, double alpha, std::size_t n, double delta) {
    const double e_moment = std::max(p / 2.0 - alpha, 1.0 + nu - p / 2.0);
    const double e_increment = (1.0 - 1.0 / alpha) * p / 2.0;
    return std::pow(static_cast<double>(n), e_moment) + std::pow(delta, e_increment);
}

}  // namespace

double lemma1_bound_value(const MomentBoundParams& params, std::size_t n, double s, double t) {
    if (n == 0) throw std::invalid_argument("lemma1_bound_value: n must be >= 1");
    return params.k * bracket_value(params.p, params.nu, params.alpha, n, std::abs(t - s));
}

MomentEstimate increment_moment_estimate(const ProcessEnsemble& ensemble, double s, double t,
                                         double p) {
    if (!(s >= 0.0 && t <= 1.0 && s <= t))
        throw std::invalid_argument("increment_moment_estimate: need 0 <= s <= t <= 1");
    if (ensemble.replicates < 2)
        throw need_replicates_error("increment_moment_estimate: need at least 2 replicates");
    const std::size_t is = ensemble.grid.index_of(s);
    const std::size_t it = ensemble.grid.index_of(t);
    if (is == EvaluationGrid::npos || it == EvaluationGrid::npos)
        throw grid_error("increment_moment_estimate: s and t must be grid points");

    std::vector<double> powered(ensemble.replicates);
    for (std::size_t r = 0; r < ensemble.replicates; ++r) {
        const double d = std::abs(ensemble.at(r, it) - ensemble.at(r, is));
        powered[r] = (d == 0.0) ? 0.0 : std::pow(d, p);
    }
    const MeanSe m = mean_with_se(powered);
    return {m.value, m.se, ensemble.replicates};
}

double BoundFit::k_hat_for(std::size_t n) const {
    double k = 0.0;
    for (const auto& row : table)
        if (row.n == n) k = std::max(k, row.ratio);
    return k;
}

BoundFit fit_bound_constant(std::span<const MomentCell> cells, double p, double nu, double alpha) {
    if (!(alpha > 1.0 && p > 2.0 && nu > 0.0))
        throw std::invalid_argument("fit_bound_constant: need alpha > 1, p > 2, nu > 0");
    BoundFit fit;
    fit.table.reserve(cells.size());
    for (const auto& cell : cells) {
        BoundFitRow row{cell.n,        cell.s,  cell.t, cell.p, cell.estimate,
                        cell.se,       0.0,     0.0};
        row.bracket = bracket_value(p, nu, alpha, cell.n, std::abs(cell.t - cell.s));
        row.ratio = cell.estimate / row.bracket;
        fit.k_hat = std::max(fit.k_hat, row.ratio);
        fit.table.push_back(row);
    }
    return fit;
}

ModulusStats dyadic_modulus(const EmpiricalProcessSample& sample, int k) {
    if (!sample.grid.refines_dyadic(k))
        throw grid_error("dyadic_modulus: sample grid does not refine dyadic(k)");
    const std::size_t cells = std::size_t{1} << k;
    const double step = std::ldexp(1.0, -k);
    double m = 0.0;
    std::size_t prev = sample.grid.index_of(0.0);
    for (std::size_t j = 1; j <= cells; ++j) {
        const double x = (j == cells) ? 1.0 : static_cast<double>(j) * step;
        const std::size_t cur = sample.grid.index_of(x);
        m = std::max(m, std::abs(sample.values[cur] - sample.values[prev]));
        prev = cur;
    }
    return {k, m, sample.n};
}

}  // namespace assoc
