// Acceptance suite: one runnable criterion per spec item, full scale, fixed
// tolerances. Each criterion prints a single [PASS]/[FAIL] line; the
// process exits nonzero if any requested criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "assoc/bounds.hpp"
#include "assoc/config.hpp"
#include "assoc/copula.hpp"
#include "assoc/diagnostics.hpp"
#include "assoc/distance.hpp"
#include "assoc/empirical.hpp"
#include "assoc/limit.hpp"
#include "assoc/model.hpp"
#include "assoc/normal.hpp"
#include "assoc/report.hpp"
#include "assoc/rng.hpp"
#include "assoc/runner.hpp"
#include "assoc/sample.hpp"
#include "assoc/stats.hpp"

using namespace assoc;

namespace {

int g_threads = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

CoordinateSample gn_coordinates(const GaussianLinearModel& model, std::size_t n,
                                std::size_t replicates, std::uint64_t seed,
                                const std::vector<double>& coords) {
    CoordinateSample out;
    out.replicates = replicates;
    out.dims = coords.size();
    out.data.resize(replicates * coords.size());
    for_each_path(model, n, replicates, seed, 0, g_threads,
                  [&](std::size_t r, std::span<const double> path) {
                      empirical_process_at(path, coords,
                                           {out.data.data() + r * coords.size(), coords.size()});
                  });
    return out;
}

CoordinateSample limit_coordinates(const LimitCovariance& cov, std::size_t replicates,
                                   std::uint64_t seed) {
    const auto ens = sample_limit_process(cov, replicates, seed, 0, g_threads);
    CoordinateSample out;
    out.replicates = replicates;
    out.dims = cov.grid.size();
    out.data = ens.values;
    return out;
}

const std::vector<double> kCoords{0.1, 0.3, 0.5, 0.7, 0.9};

// ---------------------------------------------------------------------------
// C1: Donsker baseline, iid model vs exact Brownian-bridge fdds.
bool criterion1() {
    Timer timer;
    const auto model = build_gaussian_linear_model_iid();
    const auto cov =
        limit_covariance_matrix(model, EvaluationGrid::from_points(kCoords), 0, 1e-12);
    const std::size_t n = 4096, replicates = 2000, runs = 100;
    int accept = 0;
    for (std::size_t run = 0; run < runs; ++run) {
        const std::uint64_t seed = 1000 + run;
        const auto gn = gn_coordinates(model, n, replicates, seed, kCoords);
        const auto bridge = limit_coordinates(cov, replicates, seed);
        FddDistanceOptions opt;
        opt.seed = seed;
        opt.threads = g_threads;
        const auto rep = fdd_distance(gn, bridge, opt);
        if (rep.p_value > 0.01) ++accept;
    }
    const double elapsed = timer.seconds();
    const bool pass = accept >= 95 && elapsed <= 300.0;
    std::printf("[%s] C1 donsker baseline (iid, n=4096, R=2000): p>0.01 in %d/100 runs, %.0fs\n",
                pass ? "PASS" : "FAIL", accept, elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C2: associated-case convergence, power_law(3) vs the exact truncated limit.
bool criterion2() {
    Timer timer;
    const auto model = build_gaussian_linear_model_power_law(3.0, 256);
    const auto cov =
        limit_covariance_matrix(model, EvaluationGrid::from_points(kCoords), 256, 1e-6);
    const std::size_t n = std::size_t{1} << 13, replicates = 1000, runs = 100;
    int accept = 0;
    CoordinateSample first_run;
    for (std::size_t run = 0; run < runs; ++run) {
        const std::uint64_t seed = 5000 + run;
        const auto gn = gn_coordinates(model, n, replicates, seed, kCoords);
        if (run == 0) first_run = gn;
        const auto limit = limit_coordinates(cov, replicates, seed);
        FddDistanceOptions opt;
        opt.seed = seed;
        opt.threads = g_threads;
        const auto rep = fdd_distance(gn, limit, opt);
        if (rep.p_value > 0.01) ++accept;
    }

    // Empirical covariance of G_n vs Gamma at five grid pairs, 4 SE budget.
    const std::vector<std::array<std::size_t, 2>> pairs{{0, 0}, {2, 2}, {4, 4}, {0, 2}, {1, 3}};
    double worst_units = 0.0;
    std::vector<double> rows(first_run.replicates * 3);
    for (const auto& pr : pairs) {
        for (std::size_t r = 0; r < first_run.replicates; ++r) {
            const double x = first_run.data[r * first_run.dims + pr[0]];
            const double y = first_run.data[r * first_run.dims + pr[1]];
            rows[r * 3 + 0] = x * y;
            rows[r * 3 + 1] = x;
            rows[r * 3 + 2] = y;
        }
        const MeanSe est = jackknife_transformed_mean(
            rows, 3, [](std::span<const double> m) { return m[0] - m[1] * m[2]; });
        worst_units = std::max(worst_units, std::abs(est.value - cov.at(pr[0], pr[1])) /
                                                (est.se > 0 ? est.se : 1e-300));
    }

    const double elapsed = timer.seconds();
    const bool pass = accept >= 90 && worst_units <= 4.0;
    std::printf(
        "[%s] C2 associated convergence (power_law(3), n=8192, R=1000): p>0.01 in %d/100 runs, "
        "cov gap %.2f se (<=4), tail %.2g, %.0fs\n",
        pass ? "PASS" : "FAIL", accept, worst_units, cov.tail_bound, elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C3: Eq.(6) exhaustively at grid scale for every shipped model.
bool criterion3() {
    Timer timer;
    struct Entry {
        const char* label;
        GaussianLinearModel model;
    };
    const std::vector<Entry> models = {
        {"iid", build_gaussian_linear_model_iid()},
        {"ar1(0.5)", build_gaussian_linear_model_ar1(0.5)},
        {"power_law(3)", build_gaussian_linear_model_power_law(3.0)},
        {"power_law(3,256)", build_gaussian_linear_model_power_law(3.0, 256)},
    };
    bool all = true;
    double worst = -1e300;
    for (const auto& entry : models) {
        const auto rep = indicator_covariance_check(entry.model, 50, 20, 1e-10);
        worst = std::max(worst, rep.worst_violation);
        if (!rep.pass) {
            all = false;
            std::printf("  violation on %s: %.3g\n", entry.label, rep.worst_violation);
        }
    }
    const double elapsed = timer.seconds();
    const bool pass = all && elapsed <= 60.0;
    std::printf(
        "[%s] C3 indicator covariance bound (k<=50, 20x20 grid, 4 models): worst violation "
        "%.3g (tol 1e-10), %.1fs\n",
        pass ? "PASS" : "FAIL", worst, elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C4: Lemma 1 bracket, fitted K stability and domination.
bool criterion4() {
    Timer timer;
    const auto model = build_gaussian_linear_model_power_law(3.0);
    const double p = 4.5, nu = 0.1, alpha = 3.0;
    const std::vector<std::size_t> sizes{1u << 8, 1u << 10, 1u << 12};
    const std::size_t replicates = 500;
    const auto grid = EvaluationGrid::dyadic(6);

    std::vector<MomentCell> cells;
    for (std::size_t n : sizes) {
        const auto ens = compute_process_ensemble(model, n, replicates, 777, 0, grid, g_threads);
        for (int q = 1; q <= 6; ++q) {
            const double delta = std::ldexp(1.0, -q);
            for (std::size_t j = 0; j < (std::size_t{1} << q); ++j) {
                const double s = static_cast<double>(j) * delta;
                const double t = s + delta;
                const auto est = increment_moment_estimate(ens, s, t, p);
                cells.push_back({n, s, t, p, est.value, est.se});
            }
        }
    }
    const auto fit = fit_bound_constant(cells, p, nu, alpha);
    const double k_small = fit.k_hat_for(sizes.front());
    const double k_large = fit.k_hat_for(sizes.back());
    const bool stable = k_large <= 2.0 * k_small;

    const MomentBoundParams params(p, nu, alpha, 1.0, 1.5 * fit.k_hat);
    bool dominated = true;
    for (const auto& row : fit.table)
        if (row.estimate > lemma1_bound_value(params, row.n, row.s, row.t)) dominated = false;

    const double elapsed = timer.seconds();
    const bool pass = stable && dominated && elapsed <= 600.0;
    std::printf(
        "[%s] C4 lemma-1 bracket (power_law(3), p=4.5): K_hat %.3f -> %.3f across n "
        "(limit 2x), all %zu cells below 1.5 K_hat bracket: %s, %.0fs\n",
        pass ? "PASS" : "FAIL", k_small, k_large, fit.table.size(), dominated ? "yes" : "no",
        elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C5: exponent machinery exactness.
bool criterion5() {
    Timer timer;
    bool pass = true;
    const double thr = alpha_threshold();
    pass &= admissible_p_interval(thr - 1e-6).empty;
    pass &= !admissible_p_interval(thr + 1e-6).empty;

    std::mt19937 gen(424242);
    std::uniform_real_distribution<double> alpha_dist(thr + 1e-9, 12.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000 && pass; ++i) {
        const double alpha = alpha_dist(gen);
        const auto iv = admissible_p_interval(alpha);
        if (iv.empty) {
            pass = false;
            break;
        }
        const double p = iv.lower + (iv.upper - iv.lower) * unit(gen);
        pass &= (p / 2.0 - alpha) - (1.0 - p / 2.0) > -1e-12;
        pass &= alpha - (p + 1.0) / 2.0 > -1e-12;
        pass &= (1.0 - 1.0 / alpha) * p / 2.0 - 1.0 > -1e-12;
    }

    const double p = 4.5, nu = 0.05;
    const auto sched = chaining_schedule(std::size_t{1} << 20, nu, p, 3.0);
    double prev = 1e300;
    for (int d = 1; d <= sched.m_n; ++d) {
        const double v = chaining_tail_value(d, sched.m_n, std::size_t{1} << 20, p, nu, 3.0, 1.0,
                                             1.0, sched.r);
        if (v > prev + 1e-12) pass = false;
        prev = v;
    }

    const double elapsed = timer.seconds();
    std::printf("[%s] C5 exponent machinery exact at 1e-12 (interval, 1000 samples, tail "
                "monotone in d), %.1fs\n",
                pass ? "PASS" : "FAIL", elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C6: SI concavity sign pattern and TP2 mixed partial at M = 200.
bool criterion6() {
    Timer timer;
    bool pass = true;
    for (int i = 1; i <= 9; ++i) {
        const double rho = 0.1 * i;
        if (!si_concavity_report(CopulaGrid::gaussian(rho, 200), 1e-8).pass) {
            std::printf("  si_concavity unexpectedly failed at rho=%.1f\n", rho);
            pass = false;
        }
        if (si_concavity_report(CopulaGrid::gaussian(-rho, 200), 1e-8).pass) {
            std::printf("  si_concavity unexpectedly passed at rho=%.1f\n", -rho);
            pass = false;
        }
    }
    double worst_tp2_gap = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double rho = 0.1 * i;
        for (const double r : {rho, -rho}) {
            const auto rep = tp2_report(r, 4.0, 200, 1e-8);
            const double analytic = r / (1.0 - r * r);
            for (const auto& [k, v] : rep.details)
                if (k == "min_mixed_partial" || k == "max_mixed_partial")
                    worst_tp2_gap = std::max(worst_tp2_gap, std::abs(v - analytic));
            if ((r > 0) != rep.pass) pass = false;
        }
    }
    pass &= worst_tp2_gap <= 1e-6;
    const double elapsed = timer.seconds();
    std::printf("[%s] C6 dependence hypotheses (M=200): SI sign pattern ok, TP2 gap %.2g "
                "(<=1e-6), %.0fs\n",
                pass ? "PASS" : "FAIL", worst_tp2_gap, elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C7: closed forms vs 10^7-draw Monte Carlo oracles at nine correlations.
bool criterion7() {
    Timer timer;
    bool pass = true;
    double worst_sigma = 0.0, worst_orthant = 0.0;
    const std::size_t draws = 10000000;
    for (int i = 1; i <= 9; ++i) {
        const double rho = -0.9 + 0.2 * (i - 1);  // -0.9 .. 0.7
        const double lam = std::sqrt(1.0 - rho * rho);
        rng::Stream stream(31400 + i, rng::stream_id(0, rng::Lane::oracle, i));
        // Shared draws feed both oracles: the uniform-pair covariance and
        // the bivariate cdf at (h, k) = (0.3, -0.2).
        const double h = 0.3, k = -0.2;
        double s_cov = 0.0, s_cov2 = 0.0;
        std::size_t hits = 0;
        for (std::size_t d = 0; d < draws; ++d) {
            const double z1 = stream.normal();
            const double z2 = rho * z1 + lam * stream.normal();
            const double prod = (normal_cdf(z1) - 0.5) * (normal_cdf(z2) - 0.5);
            s_cov += prod;
            s_cov2 += prod * prod;
            hits += (z1 <= h && z2 <= k) ? 1 : 0;
        }
        const double nd = static_cast<double>(draws);
        const double cov_est = s_cov / nd;
        const double cov_se = std::sqrt((s_cov2 / nd - cov_est * cov_est) / nd);
        const double cov_gap = std::abs(cov_est - uniform_pair_covariance(rho)) / cov_se;

        const double p_est = static_cast<double>(hits) / nd;
        const double p = binormal_cdf(h, k, rho);
        const double p_se = std::sqrt(p * (1.0 - p) / nd);
        const double p_gap = std::abs(p_est - p) / p_se;

        worst_sigma = std::max({worst_sigma, cov_gap, p_gap});
        if (cov_gap > 3.0 || p_gap > 3.0) pass = false;

        const double orthant =
            std::abs(binormal_cdf(0.0, 0.0, rho) -
                     (0.25 + std::asin(rho) / (2.0 * std::numbers::pi)));
        worst_orthant = std::max(worst_orthant, orthant);
        if (orthant > 1e-9) pass = false;
    }
    const double elapsed = timer.seconds();
    std::printf("[%s] C7 closed-form cross-oracles (9 rho, 1e7 draws): worst gap %.2f sigma "
                "(<=3), orthant gap %.2g (<=1e-9), %.0fs\n",
                pass ? "PASS" : "FAIL", worst_sigma, worst_orthant, elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C8: Corollary-1 route with the exponential(1) marginal.
bool criterion8() {
    Timer timer;
    const auto model = build_gaussian_linear_model_power_law(3.0);
    const std::size_t n = 50000, replicates = 200;  // R n = 10^7
    const auto marginal = exponential_marginal(1.0);
    const auto exp_ens = sample_paths(model, marginal, n, replicates, 88, 0, g_threads);
    const auto bound = marginal_covariance_bound_check(exp_ens, 20);

    // Same seeds, uniform01 marginal: the uniform-scale statistics must be
    // bit-for-float identical.
    const auto uni_ens = sample_paths(model, uniform01_marginal(), n, replicates, 88, 0,
                                      g_threads);
    bool identical = true;
    const auto grid = EvaluationGrid::dyadic(6);
    for (std::size_t r = 0; r < replicates && identical; r += 37) {
        const auto a = compute_empirical_process(exp_ens.uniform_row(r), grid);
        const auto b = compute_empirical_process(uni_ens.uniform_row(r), grid);
        if (a.values != b.values) identical = false;
        if (sup_norm_statistic(a) != sup_norm_statistic(b)) identical = false;
    }

    const double elapsed = timer.seconds();
    const bool pass = bound.pass && identical;
    std::printf("[%s] C8 corollary-1 route (exponential(1), R*n=1e7): bound %s "
                "(worst %.3g), transform statistics bit-identical: %s, %.0fs\n",
                pass ? "PASS" : "FAIL", bound.pass ? "holds" : "violated",
                bound.worst_violation, identical ? "yes" : "no", elapsed);
    return pass;
}

// ---------------------------------------------------------------------------
// C9: byte-identical reports across reruns and thread counts.
bool criterion9() {
    Timer timer;
    const char* cfg_text =
        "[model]\nkind = power_law\nalpha = 3\nj_max = 128\n"
        "[run]\nseed = 97\nn = 1024\nreplicates = 200\n"
        "checks = decay_cert si_concavity tp2 indicator_cov assoc_probe donsker_fdd cov_match "
        "modulus\n"
        "[decay_cert]\nC = 0.5\nalpha = 2\nk_max = 40\n"
        "[si_concavity]\nresolution = 60\nlags = 1 2\n"
        "[tp2]\nresolution = 40\nlags = 1\n"
        "[indicator_cov]\nk_max = 12\ngrid_m = 10\n"
        "[donsker_fdd]\npermutations = 199\n"
        "[cov_match]\nk_max = 128\n"
        "[modulus]\nscales = 3 6\n";
    const auto cfg = parse_config_text(cfg_text);
    const auto r1 = run_experiment(cfg, 1);
    const auto r2 = run_experiment(cfg, 2);
    const auto r3 = run_experiment(cfg, 4);
    bool identical = true;
    for (const auto fmt : {ReportFormat::csv, ReportFormat::jsonl, ReportFormat::text}) {
        if (report_body(r1, fmt) != report_body(r2, fmt)) identical = false;
        if (report_body(r1, fmt) != report_body(r3, fmt)) identical = false;
    }
    bool all_pass = report_exit_code(r1) == 0;
    if (!all_pass)
        for (const auto& c : r1.checks)
            if (c.verdict != Verdict::pass)
                std::printf("  check %s: %s %s\n", c.name.c_str(), verdict_name(c.verdict),
                            c.message.c_str());
    const double elapsed = timer.seconds();
    const bool pass = identical && all_pass;
    std::printf("[%s] C9 determinism: report bodies byte-identical across threads {1,2,4} and "
                "reruns: %s, checks all pass: %s, %.0fs\n",
                pass ? "PASS" : "FAIL", identical ? "yes" : "no", all_pass ? "yes" : "no",
                elapsed);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> criteria;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            criteria.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
            g_threads = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--list") == 0) {
            std::puts("criteria 1..9");
            return 0;
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]... [--threads N]\n");
            return 2;
        }
    }
    if (criteria.empty())
        for (int c = 1; c <= 9; ++c) criteria.push_back(c);

    bool (*const table[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                               criterion6, criterion7, criterion8, criterion9};
    bool all = true;
    for (int c : criteria) {
        if (c < 1 || c > 9) {
            std::fprintf(stderr, "unknown criterion %d\n", c);
            return 2;
        }
        all &= table[c - 1]();
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
