#include "assoc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "assoc/errors.hpp"

namespace assoc {

EvaluationGrid EvaluationGrid::uniform(int m) {
    if (m < 1) throw std::invalid_argument("EvaluationGrid::uniform: M must be >= 1");
    EvaluationGrid g;
    g.kind = Kind::uniform;
    g.level = m;
    g.points.resize(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) g.points[j] = static_cast<double>(j) / m;
    return g;
}

EvaluationGrid EvaluationGrid::dyadic(int m) {
    if (m < 0 || m > 40) throw std::invalid_argument("EvaluationGrid::dyadic: m out of range");
    EvaluationGrid g;
    g.kind = Kind::dyadic;
    g.level = m;
    const std::size_t count = (std::size_t{1} << m) + 1;
    g.points.resize(count);
    const double step = std::ldexp(1.0, -m);
    for (std::size_t j = 0; j < count; ++j) g.points[j] = static_cast<double>(j) * step;
    g.points.back() = 1.0;
    return g;
}

EvaluationGrid EvaluationGrid::from_points(std::vector<double> points) {
    if (points.empty()) throw grid_error("EvaluationGrid: empty point set");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0 && points[i] <= 1.0))
            throw grid_error("EvaluationGrid: points must lie in [0,1]");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw grid_error("EvaluationGrid: points must be strictly increasing");
    }
    EvaluationGrid g;
    g.kind = Kind::explicit_points;
    g.points = std::move(points);
    return g;
}

bool EvaluationGrid::refines_dyadic(int k) const {
    if (k < 0 || k > 40) return false;
    if (kind == Kind::dyadic) return level >= k;
    const std::size_t count = (std::size_t{1} << k) + 1;
    const double step = std::ldexp(1.0, -k);
    for (std::size_t j = 0; j < count; ++j) {
        const double x = (j + 1 == count) ? 1.0 : static_cast<double>(j) * step;
        if (index_of(x) == npos) return false;
    }
    return true;
}

std::size_t EvaluationGrid::index_of(double x) const {
    const auto it = std::lower_bound(points.begin(), points.end(), x);
    if (it == points.end() || *it != x) return npos;
    return static_cast<std::size_t>(it - points.begin());
}

}  // namespace assoc
