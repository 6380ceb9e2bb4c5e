#include "assoc/stats.hpp"

#include <cmath>
#include <vector>

#include "assoc/errors.hpp"

namespace assoc {

MeanSe jackknife_transformed_mean(std::span<const double> data, std::size_t columns,
                                  const std::function<double(std::span<const double>)>& h) {
    if (columns == 0 || data.size() % columns != 0)
        throw std::invalid_argument("jackknife: data size must be a multiple of columns");
    const std::size_t r = data.size() / columns;
    if (r < 2) throw need_replicates_error("jackknife: need at least 2 replicates");

    std::vector<double> sums(columns, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < columns; ++j) sums[j] += data[i * columns + j];

    std::vector<double> means(columns);
    for (std::size_t j = 0; j < columns; ++j) means[j] = sums[j] / static_cast<double>(r);
    const double value = h(means);

    std::vector<double> loo(columns);
    std::vector<double> theta(r);
    double theta_bar = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < columns; ++j)
            loo[j] = (sums[j] - data[i * columns + j]) / static_cast<double>(r - 1);
        theta[i] = h(loo);
        theta_bar += theta[i];
    }
    theta_bar /= static_cast<double>(r);

    double ss = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double d = theta[i] - theta_bar;
        ss += d * d;
    }
    MeanSe out;
    out.value = value;
    out.se = std::sqrt(ss * static_cast<double>(r - 1) / static_cast<double>(r));
    return out;
}

MeanSe mean_with_se(std::span<const double> sample) {
    return jackknife_transformed_mean(sample, 1,
                                      [](std::span<const double> m) { return m[0]; });
}

}  // namespace assoc
