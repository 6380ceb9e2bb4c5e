#pragma once

#include <cstddef>
#include <utility>

// Executable exponent arithmetic from the tightness proof: the admissible
// moment-order interval, the Lemma-1 exponent pair, the dyadic schedule
// (m_n, r), the chained tail expression, and the increment covariance-sum
// bound with its implied constant.

namespace assoc {

// p must satisfy max(alpha+1, 2 alpha/(alpha-1)) < p < 2 alpha - 1; nonempty
// exactly when alpha > (5 + sqrt 17)/4.
struct AdmissibleInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool empty = true;
};

inline constexpr double kAlphaThresholdNumerator = 5.0;  // (5 + sqrt(17)) / 4

double alpha_threshold();  // (5 + sqrt(17)) / 4

AdmissibleInterval admissible_p_interval(double alpha);  // alpha > 1

// ((p/2 - alpha) v (1 + nu - p/2), (1 - 1/alpha) p / 2).
std::pair<double, double> lemma1_exponents(double p, double nu, double alpha);

struct ChainingSchedule {
    std::size_t n = 0;
    double nu = 0.0;
    double p = 0.0;
    int m_n = 1;        // floor(log2 n^{1/2+nu}) v 1
    double r = 0.0;     // 2^{-nu/p}, so r^{-p} = 2^nu exactly
    int d = 0;          // coarse scale, chosen by the caller
    double beta = 0.0;  // (1 - 1/alpha) p / 2 when alpha is supplied, else 0
};

ChainingSchedule chaining_schedule(std::size_t n, double nu, double p, double alpha = 0.0);

// Expression (a10): sum_{k=1}^{m_n - d} 2^{d+k} K 2^p
//   [n^{(p/2-alpha) v (1+nu-p/2)} + (2^{-d-k})^{(1-1/alpha) p/2}]
//   / (r^{p(k-1)} eps^p (1-r)^p).
// Returns 0 for d >= m_n (empty sum).
double chaining_tail_value(int d, int m_n, std::size_t n, double p, double nu, double alpha,
                           double k_const, double epsilon, double r);

struct CovSumBound {
    double value = 0.0;  // delta (floor(delta^{-1/alpha}) + 1) + 16 C sum_{k > floor} k^{-alpha}
    double a1 = 0.0;     // value / delta^{1 - 1/alpha}
    bool a1_defined = false;
};

CovSumBound increment_cov_sum_bound(double delta, double c, double alpha);

namespace detail {
// sum_{k > m} k^{-alpha}, direct summation plus an Euler-Maclaurin closure
// (relative error well under 1e-12).
double zeta_tail(double alpha, std::size_t m);

// Bare increment part of (a10): sum_{k=1}^{m_n-d} 2^{d+k} (2^{-d-k})^beta r^{-p(k-1)}.
double chaining_increment_sum(int d, int m_n, double beta, double p, double r);
}  // namespace detail

}  // namespace assoc
