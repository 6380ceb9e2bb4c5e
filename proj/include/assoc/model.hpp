#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Latent stationary Gaussian linear processes Z_t = sum_j a_j eps_{t+j} with
// nonnegative coefficients and unit variance (sum a_j^2 = 1). Nonnegative
// coefficients make the latent process associated and every lag correlation
// rho_k = sum_j a_j a_{j+k} nonnegative; the observed sequence is
// X_t = Phi(Z_t), uniform on [0,1] with Gaussian copula dependence.

namespace assoc {

inline constexpr std::size_t kDefaultJMax = 4096;

struct GaussianLinearModel {
    enum class Kind { iid, ar1, power_law };

    Kind kind = Kind::iid;
    double phi = 0.0;    // ar1 only
    double alpha = 0.0;  // power_law only
    std::size_t j_max = 0;
    double variance_norm = 1.0;  // 1/sqrt(sum of squared raw coefficients)
    std::vector<double> coefficients;  // normalized, sum of squares == 1

    std::size_t max_lag() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    // rho_k = sum_j a_j a_{j+k}; exactly 0 for k > max_lag().
    double rho(std::size_t k) const;

    // Canonical one-line description, also the basis of hash().
    std::string describe() const;
    std::uint64_t hash() const;
};

GaussianLinearModel build_gaussian_linear_model_iid();

// 0 <= phi < 1; coefficients a_j proportional to phi^j, truncated at j_max.
GaussianLinearModel build_gaussian_linear_model_ar1(double phi, std::size_t j_max = kDefaultJMax);

// alpha > 0; raw coefficients a_j = (j+1)^{-(alpha+1)/2}, j = 0..j_max.
GaussianLinearModel build_gaussian_linear_model_power_law(double alpha,
                                                          std::size_t j_max = kDefaultJMax);

double latent_autocorrelation(const GaussianLinearModel& model, std::size_t k);

// cov(Phi(Z_0), Phi(Z_k)) for standard bivariate normal correlation rho:
// asin(rho/2) / (2 pi). Monotone in rho, range [-1/12, 1/12].
double uniform_pair_covariance(double rho);

struct CovarianceDecayCertificate {
    double c = 0.0;
    double alpha = 0.0;
    std::size_t k_max = 0;
    double margin = 0.0;  // min over k <= k_max of (C k^-alpha - cov(X_0,X_k))
    bool valid = false;   // margin >= 0
    bool tail_certified = false;  // bound also verified for every k > k_max
    std::string tail_note;
};

// Checks cov(X_0,X_k) <= C k^-alpha exactly (via uniform_pair_covariance of
// the model's rho_k) for k = 1..k_max, and records the tail argument: lags
// beyond the coefficient support have covariance exactly zero, lags between
// k_max and the support end are checked numerically.
CovarianceDecayCertificate verify_decay_certificate(const GaussianLinearModel& model, double c,
                                                    double alpha, std::size_t k_max);

}  // namespace assoc
