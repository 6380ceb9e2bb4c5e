#include "assoc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace assoc {

double alpha_threshold() { return (5.0 + std::sqrt(17.0)) / 4.0; }

AdmissibleInterval admissible_p_interval(double alpha) {
    if (!(alpha > 1.0))
        throw std::invalid_argument("admissible_p_interval: alpha must be > 1");
    AdmissibleInterval iv;
    iv.lower = std::max(alpha + 1.0, 2.0 * alpha / (alpha - 1.0));
    iv.upper = 2.0 * alpha - 1.0;
    iv.empty = !(iv.lower < iv.upper);
    return iv;
}

std::pair<double, double> lemma1_exponents(double p, double nu, double alpha) {
    if (!(p > 2.0 && nu > 0.0 && alpha > 1.0))
        throw std::invalid_argument("lemma1_exponents: need p > 2, nu > 0, alpha > 1");
    return {std::max(p / 2.0 - alpha, 1.0 + nu - p / 2.0), (1.0 - 1.0 / alpha) * p / 2.0};
}

ChainingSchedule chaining_schedule(std::size_t n, double nu, double p, double alpha) {
    if (n == 0) throw std::invalid_argument("chaining_schedule: n must be >= 1");
    if (!(nu > 0.0 && p > 2.0))
        throw std::invalid_argument("chaining_schedule: need nu > 0 and p > 2");
    ChainingSchedule s;
    s.n = n;
    s.nu = nu;
    s.p = p;
    // floor((1/2+nu) log2 n), nudged so exact powers of two land on the
    // integer; the estimate 2^{m_n} <= 2 n^{1/2+nu} is preserved either way.
    const double x = (0.5 + nu) * std::log2(static_cast<double>(n));
    s.m_n = std::max(1, static_cast<int>(std::floor(x + 1e-12)));
    s.r = std::exp2(-nu / p);
    if (alpha > 1.0) s.beta = (1.0 - 1.0 / alpha) * p / 2.0;
    if (std::exp2(static_cast<double>(s.m_n)) >
        2.0 * std::pow(static_cast<double>(n), 0.5 + nu) * (1.0 + 1e-9))
        throw std::runtime_error("chaining_schedule: 2^{m_n} <= 2 n^{1/2+nu} violated");
    return s;
}

double chaining_tail_value(int d, int m_n, std::size_t n, double p, double nu, double alpha,
                           double k_const, double epsilon, double r) {
    if (!(p > 2.0 && nu > 0.0 && alpha > 1.0))
        throw std::invalid_argument("chaining_tail_value: need p > 2, nu > 0, alpha > 1");
    if (!(k_const >= 0.0)) throw std::invalid_argument("chaining_tail_value: K must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("chaining_tail_value: epsilon must be > 0");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("chaining_tail_value: r in (0,1)");
    if (n == 0) throw std::invalid_argument("chaining_tail_value: n must be >= 1");
    if (d >= m_n) return 0.0;

    const auto [e_moment, beta] = lemma1_exponents(p, nu, alpha);
    const double n_term = std::pow(static_cast<double>(n), e_moment);
    const double denom_const = std::pow(epsilon, p) * std::pow(1.0 - r, p);
    double sum = 0.0;
    for (int k = 1; k <= m_n - d; ++k) {
        const double scale = std::exp2(static_cast<double>(d + k));
        const double increment = std::pow(std::exp2(-static_cast<double>(d + k)), beta);
        const double denom = std::pow(r, p * (k - 1)) * denom_const;
        sum += scale * k_const * std::exp2(p) * (n_term + increment) / denom;
    }
    return sum;
}

namespace detail {

double zeta_tail(double alpha, std::size_t m) {
    if (!(alpha > 1.0)) throw std::invalid_argument("zeta_tail: alpha must be > 1");
    const std::size_t cutoff = std::max<std::size_t>(m + 1, 10000);
    double sum = 0.0;
    for (std::size_t k = m + 1; k <= cutoff; ++k)
        sum += std::pow(static_cast<double>(k), -alpha);
    // Euler-Maclaurin closure beyond the cutoff.
    const double x = static_cast<double>(cutoff + 1);
    sum += std::pow(x, 1.0 - alpha) / (alpha - 1.0) + 0.5 * std::pow(x, -alpha) +
           alpha / 12.0 * std::pow(x, -alpha - 1.0);
    return sum;
}

double chaining_increment_sum(int d, int m_n, double beta, double p, double r) {
    double sum = 0.0;
    for (int k = 1; k <= m_n - d; ++k)
        sum += std::exp2(static_cast<double>(d + k)) *
               std::pow(std::exp2(-static_cast<double>(d + k)), beta) *
               std::pow(r, -p * (k - 1));
    return sum;
}

}  // namespace detail

CovSumBound increment_cov_sum_bound(double delta, double c, double alpha) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("increment_cov_sum_bound: delta must lie in [0,1]");
    if (!(c > 0.0 && alpha > 1.0))
        throw std::invalid_argument("increment_cov_sum_bound: need C > 0 and alpha > 1");
    CovSumBound out;
    if (delta == 0.0) return out;  // value 0, A1 undefined

    const double m_real = std::pow(delta, -1.0 / alpha);
    const std::size_t m = static_cast<std::size_t>(std::floor(m_real));
    out.value = delta * static_cast<double>(m + 1) + 16.0 * c * detail::zeta_tail(alpha, m);
    out.a1 = out.value / std::pow(delta, 1.0 - 1.0 / alpha);
    out.a1_defined = true;
    return out;
}

}  // namespace assoc
