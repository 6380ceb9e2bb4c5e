#pragma once

#include <functional>
#include <optional>
#include <string>

namespace assoc {

// Marginal distribution of the observed sequence. uniform01 is the native
// scale; any continuous strictly increasing F is reached through the inverse
// transform X = F^{-1}(U). density_bound, when present, is the Lipschitz
// constant of F.
struct MarginalSpec {
    enum class Kind { uniform01, continuous };

    Kind kind = Kind::uniform01;
    std::string name = "uniform01";
    std::function<double(double)> cdf;       // continuous only
    std::function<double(double)> quantile;  // continuous only
    std::optional<double> density_bound;
    bool finite_variance = true;

    bool is_uniform() const { return kind == Kind::uniform01; }
};

MarginalSpec uniform01_marginal();

// F(x) = 1 - exp(-rate x); density bound = rate.
MarginalSpec exponential_marginal(double rate = 1.0);

}  // namespace assoc
