#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace assoc {

struct MeanSe {
    double value = 0.0;
    double se = 0.0;
};

// Leave-one-out jackknife of h(column means) over R replicate rows.
// `data` is row-major R x columns. For h = identity on one column this
// reduces to the classical standard error of the mean; for smooth h
// (covariances, ratios of means) it gives the usual first-order SE.
MeanSe jackknife_transformed_mean(std::span<const double> data, std::size_t columns,
                                  const std::function<double(std::span<const double>)>& h);

// Convenience: mean and jackknife SE of a plain sample.
MeanSe mean_with_se(std::span<const double> sample);

}  // namespace assoc
