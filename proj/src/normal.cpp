#include "assoc/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace assoc {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

namespace detail {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    if (p == 0.5) return 0.0;

    const bool upper = p > 0.5;
    const double pt = upper ? 1.0 - p : p;

    // Rational tail approximation (Abramowitz & Stegun 26.2.23, |err| < 4.5e-4).
    const double t = std::sqrt(-2.0 * std::log(pt));
    double x = -(t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                         (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))));

    // Two Halley steps push the error to ~1e-16.
    for (int i = 0; i < 2; ++i) {
        const double err = normal_cdf(x) - pt;
        const double u = err / normal_pdf(x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return upper ? -x : x;
}

double binormal_cdf(double h, double k, double rho) {
    if (std::isnan(h) || std::isnan(k) || std::isnan(rho))
        throw std::domain_error("binormal_cdf: NaN input");
    if (std::abs(rho) > 1.0) throw std::domain_error("binormal_cdf: |rho| must be <= 1");

    if (std::isinf(h) || std::isinf(k)) {
        if (h < 0.0 || k < 0.0) return 0.0;  // either argument is -inf
        if (std::isinf(h) && std::isinf(k)) return 1.0;
        return std::isinf(h) ? normal_cdf(k) : normal_cdf(h);
    }
    if (rho == 1.0) return normal_cdf(std::min(h, k));
    if (rho == -1.0) return std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);
    if (rho == 0.0) return normal_cdf(h) * normal_cdf(k);

    const double hk = h * k;
    const double hh = h * h + k * k;
    const auto integrand = [hk, hh](double theta) {
        const double s = std::sin(theta);
        const double c2 = 1.0 - s * s;
        const double arg = (hh - 2.0 * hk * s) / (2.0 * c2);
        return std::exp(-arg);
    };
    const double upper = std::asin(rho);
    const double correction = detail::integrate(integrand, 0.0, upper, 5e-13) / kTwoPi;
    double value = normal_cdf(h) * normal_cdf(k) + correction;
    // Clamp tiny excursions outside the Frechet-Hoeffding band.
    const double lo = std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);
    const double hi = std::min(normal_cdf(h), normal_cdf(k));
    if (value < lo) value = lo;
    if (value > hi) value = hi;
    return value;
}

double binormal_logpdf(double x, double y, double rho) {
    if (std::abs(rho) >= 1.0)
        throw std::domain_error("binormal_logpdf: degenerate density at |rho| = 1");
    const double q = 1.0 - rho * rho;
    return -(x * x - 2.0 * rho * x * y + y * y) / (2.0 * q) - std::log(kTwoPi) -
           0.5 * std::log(q);
}

double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.0) {
        // Jacobi-theta form, fast for small x.
        const double f = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
        double sum = 0.0;
        for (int j = 1; j < 64; j += 2) {
            const double term = std::exp(-f * j * j);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return std::sqrt(kTwoPi) / x * sum;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 64; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * x * x);
        sum += term;
        sign = -sign;
        if (std::abs(term) < 1e-18) break;
    }
    return 1.0 - 2.0 * sum;
}

double ks_critical_value(double alpha, double n) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("ks_critical_value: alpha in (0,1)");
    if (!(n > 0.0)) throw std::domain_error("ks_critical_value: n must be positive");
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(n);
}

}  // namespace assoc
