#pragma once

#include <cstddef>
#include <vector>

namespace assoc {

// Evaluation points for the empirical process: strictly increasing reals in
// [0,1]. dyadic(m) is the lattice {j 2^-m}, the chaining scales of the
// tightness argument; uniform(M) is {j/M}.
struct EvaluationGrid {
    enum class Kind { uniform, dyadic, explicit_points };

    Kind kind = Kind::explicit_points;
    int level = 0;  // M for uniform, m for dyadic
    std::vector<double> points;

    static EvaluationGrid uniform(int m);
    static EvaluationGrid dyadic(int m);
    static EvaluationGrid from_points(std::vector<double> points);

    std::size_t size() const { return points.size(); }

    // True when every multiple of 2^-k is a grid point.
    bool refines_dyadic(int k) const;

    // Index of x in points, or npos.
    std::size_t index_of(double x) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

}  // namespace assoc
