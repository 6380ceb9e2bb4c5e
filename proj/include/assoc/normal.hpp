#pragma once

#include <functional>

// Univariate and bivariate normal primitives. Everything downstream
// (copulas, limit covariances, path generation) leans on these, so the
// accuracy contracts are strict: normal_cdf and normal_quantile are good to
// ~1e-15, binormal_cdf to 1e-10 absolute or better.

namespace assoc {

double normal_pdf(double x);

// P(Z <= x) for standard normal Z.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1). Rational starting guess plus two Halley
// refinements against erfc; throws std::domain_error outside (0,1).
double normal_quantile(double p);

// P(Z1 <= h, Z2 <= k) for standard bivariate normal with correlation rho.
//
// Computed from the one-dimensional reduction
//   Phi2(h,k;rho) = Phi(h)Phi(k)
//                 + (1/2pi) Int_0^{asin rho} exp(-(h^2+k^2-2hk sin t)/(2cos^2 t)) dt,
// integrated adaptively; the sin substitution removes the endpoint
// singularity of the textbook form, so the integrand is smooth for |rho|<=1.
// Throws std::domain_error for NaN inputs or |rho| > 1.
double binormal_cdf(double h, double k, double rho);

// log of the standard bivariate normal density with correlation rho
// (|rho| < 1; throws std::domain_error at |rho| = 1).
double binormal_logpdf(double x, double y, double rho);

// Kolmogorov limit law P(sup|B| <= x) for a Brownian bridge B.
double kolmogorov_cdf(double x);

// Asymptotic one-sided Kolmogorov-Smirnov critical value at level alpha for
// sample size n: sqrt(-log(alpha/2) / 2) / sqrt(n).
double ks_critical_value(double alpha, double n);

namespace detail {
// Adaptive Simpson quadrature with Richardson correction; exposed for tests.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);
}  // namespace detail

}  // namespace assoc
