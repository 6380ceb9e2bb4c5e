#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Distributional distance between two replicate ensembles evaluated at a
// common coordinate subset: per-coordinate two-sample Kolmogorov-Smirnov
// statistics plus a multivariate energy-distance statistic calibrated by a
// permutation test.

namespace assoc {

// Rows = replicates, cols = coordinates, row-major.
struct CoordinateSample {
    std::size_t replicates = 0;
    std::size_t dims = 0;
    std::vector<double> data;

    std::span<const double> row(std::size_t r) const { return {data.data() + r * dims, dims}; }
};

// Extracts coordinate columns from a replicate-major matrix.
CoordinateSample extract_coordinates(std::span<const double> values, std::size_t replicates,
                                     std::size_t row_width, std::span<const std::size_t> columns);

double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct FddDistanceOptions {
    std::size_t permutations = 499;
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    double p_threshold = 0.01;
    int threads = 0;
    std::size_t min_replicates = 50;
};

struct FddDistanceReport {
    std::vector<double> ks_per_coordinate;
    double ks_max = 0.0;
    double energy = 0.0;    // observed energy distance
    double p_value = 1.0;   // permutation p-value, (1 + #{perm >= obs}) / (1 + P)
    std::size_t permutations = 0;
    bool pass = false;      // p_value > p_threshold
    double threshold = 0.0;
};

FddDistanceReport fdd_distance(const CoordinateSample& a, const CoordinateSample& b,
                               const FddDistanceOptions& options = {});

}  // namespace assoc
