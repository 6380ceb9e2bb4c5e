#include "assoc/model.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "assoc/kernels.hpp"

namespace assoc {

namespace {

constexpr double kNormTolerance = 1e-12;

void normalize(GaussianLinearModel& m) {
    double ss = 0.0;
    for (double a : m.coefficients) {
        if (a < 0.0) throw std::invalid_argument("model coefficients must be nonnegative");
        ss += a * a;
    }
    if (!(ss > 0.0)) throw std::invalid_argument("model coefficients must not all vanish");
    m.variance_norm = 1.0 / std::sqrt(ss);
    for (double& a : m.coefficients) a *= m.variance_norm;
    // Re-check the unit-variance invariant after rounding.
    double check = 0.0;
    for (double a : m.coefficients) check += a * a;
    if (std::abs(check - 1.0) > kNormTolerance)
        throw std::runtime_error("model normalization failed the unit-variance invariant");
}

}  // namespace

double GaussianLinearModel::rho(std::size_t k) const {
    if (k >= coefficients.size()) return 0.0;
    return kernels::dot(coefficients.data(), coefficients.data() + k, coefficients.size() - k);
}

std::string GaussianLinearModel::describe() const {
    char buf[128];
    switch (kind) {
        case Kind::iid:
            return "iid";
        case Kind::ar1:
            std::snprintf(buf, sizeof buf, "ar1 phi=%.17g j_max=%zu", phi, j_max);
            return buf;
        case Kind::power_law:
            std::snprintf(buf, sizeof buf, "power_law alpha=%.17g j_max=%zu", alpha, j_max);
            return buf;
    }
    return "unknown";
}

std::uint64_t GaussianLinearModel::hash() const {
    // FNV-1a over the canonical description.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : describe()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

GaussianLinearModel build_gaussian_linear_model_iid() {
    GaussianLinearModel m;
    m.kind = GaussianLinearModel::Kind::iid;
    m.j_max = 0;
    m.coefficients = {1.0};
    normalize(m);
    return m;
}

GaussianLinearModel build_gaussian_linear_model_ar1(double phi, std::size_t j_max) {
    if (!(phi >= 0.0 && phi < 1.0))
        throw std::invalid_argument("ar1 requires 0 <= phi < 1");
    GaussianLinearModel m;
    m.kind = GaussianLinearModel::Kind::ar1;
    m.phi = phi;
    m.j_max = j_max;
    m.coefficients.resize(j_max + 1);
    double c = 1.0;
    for (std::size_t j = 0; j <= j_max; ++j) {
        m.coefficients[j] = c;
        c *= phi;
    }
    normalize(m);
    return m;
}

GaussianLinearModel build_gaussian_linear_model_power_law(double alpha, std::size_t j_max) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power_law requires alpha > 0");
    GaussianLinearModel m;
    m.kind = GaussianLinearModel::Kind::power_law;
    m.alpha = alpha;
    m.j_max = j_max;
    m.coefficients.resize(j_max + 1);
    const double expo = -(alpha + 1.0) / 2.0;
    for (std::size_t j = 0; j <= j_max; ++j)
        m.coefficients[j] = std::pow(static_cast<double>(j + 1), expo);
    normalize(m);
    return m;
}

double latent_autocorrelation(const GaussianLinearModel& model, std::size_t k) {
    return model.rho(k);
}

double uniform_pair_covariance(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("uniform_pair_covariance: |rho| must be <= 1");
    return std::asin(0.5 * rho) / (2.0 * std::numbers::pi);
}

CovarianceDecayCertificate verify_decay_certificate(const GaussianLinearModel& model, double c,
                                                    double alpha, std::size_t k_max) {
    if (!(c > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("verify_decay_certificate requires C > 0 and alpha > 0");
    CovarianceDecayCertificate cert;
    cert.c = c;
    cert.alpha = alpha;
    cert.k_max = k_max;

    // Margin in units of the bound: min over k of (C - cov(X_0,X_k) k^alpha).
    // An iid model therefore certifies with margin exactly C.
    double margin = c;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double cov = uniform_pair_covariance(model.rho(k));
        margin = std::min(margin, c - cov * std::pow(static_cast<double>(k), alpha));
    }
    cert.margin = margin;
    cert.valid = margin >= 0.0;

    // Tail: covariances vanish exactly beyond the coefficient support; any
    // lags between k_max and the support end are checked numerically.
    const std::size_t support = model.max_lag();
    bool tail_ok = true;
    for (std::size_t k = k_max + 1; k <= support; ++k) {
        const double bound = c * std::pow(static_cast<double>(k), -alpha);
        if (uniform_pair_covariance(model.rho(k)) > bound) {
            tail_ok = false;
            break;
        }
    }
    cert.tail_certified = tail_ok;
    cert.tail_note = tail_ok
                         ? (k_max >= support
                                ? "cov(X_0,X_k) = 0 exactly for k > coefficient support"
                                : "checked numerically up to the coefficient support; zero beyond")
                         : "bound violated for some k in (k_max, coefficient support]";
    return cert;
}

}  // namespace assoc
