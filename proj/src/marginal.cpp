#include "assoc/marginal.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace assoc {

MarginalSpec uniform01_marginal() {
    MarginalSpec m;
    m.kind = MarginalSpec::Kind::uniform01;
    m.name = "uniform01";
    m.density_bound = 1.0;
    m.finite_variance = true;
    return m;
}

MarginalSpec exponential_marginal(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential_marginal: rate must be > 0");
    MarginalSpec m;
    m.kind = MarginalSpec::Kind::continuous;
    char buf[64];
    std::snprintf(buf, sizeof buf, "exponential rate=%.17g", rate);
    m.name = buf;
    m.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
    m.quantile = [rate](double u) { return -std::log1p(-u) / rate; };
    m.density_bound = rate;
    m.finite_variance = true;
    return m;
}

}  // namespace assoc
