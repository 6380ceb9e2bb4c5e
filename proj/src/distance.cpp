#include "assoc/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "assoc/errors.hpp"
#include "assoc/kernels.hpp"
#include "assoc/parallel.hpp"
#include "assoc/rng.hpp"

namespace assoc {

CoordinateSample extract_coordinates(std::span<const double> values, std::size_t replicates,
                                     std::size_t row_width, std::span<const std::size_t> columns) {
    if (values.size() != replicates * row_width)
        throw std::invalid_argument("extract_coordinates: size mismatch");
    CoordinateSample out;
    out.replicates = replicates;
    out.dims = columns.size();
    out.data.resize(replicates * columns.size());
    for (std::size_t r = 0; r < replicates; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c] >= row_width)
                throw std::invalid_argument("extract_coordinates: column out of range");
            out.data[r * out.dims + c] = values[r * row_width + columns[c]];
        }
    return out;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw empty_input_error("ks_two_sample: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < sa.size() && ib < sb.size()) {
        const double x = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] <= x) ++ia;
        while (ib < sb.size() && sb[ib] <= x) ++ib;
        d = std::max(d, std::abs(ia / na - ib / nb));
    }
    return d;
}

namespace {

constexpr std::size_t kPermTile = 64;

struct EnergyParts {
    double s_aa = 0.0;
    double s_bb = 0.0;
};

double energy_from_parts(const EnergyParts& p, double total, double na, double nb) {
    const double s_ab = 0.5 * (total - p.s_aa - p.s_bb);
    return 2.0 * s_ab / (na * nb) - p.s_aa / (na * na) - p.s_bb / (nb * nb);
}

}  // namespace

FddDistanceReport fdd_distance(const CoordinateSample& a, const CoordinateSample& b,
                               const FddDistanceOptions& options) {
    if (a.dims != b.dims) throw std::invalid_argument("fdd_distance: dimension mismatch");
    if (a.dims == 0) throw std::invalid_argument("fdd_distance: no coordinates");
    if (a.replicates < options.min_replicates || b.replicates < options.min_replicates)
        throw underpowered_input_error("fdd_distance: fewer than " +
                                       std::to_string(options.min_replicates) +
                                       " replicates per side");

    FddDistanceReport rep;
    rep.threshold = options.p_threshold;
    rep.permutations = options.permutations;

    // Per-coordinate KS statistics (descriptive; the permutation test runs on
    // the energy statistic).
    const std::size_t d = a.dims;
    std::vector<double> col_a(a.replicates), col_b(b.replicates);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < a.replicates; ++r) col_a[r] = a.data[r * d + c];
        for (std::size_t r = 0; r < b.replicates; ++r) col_b[r] = b.data[r * d + c];
        rep.ks_per_coordinate.push_back(ks_two_sample(col_a, col_b));
    }
    rep.ks_max = *std::max_element(rep.ks_per_coordinate.begin(), rep.ks_per_coordinate.end());

    // Pooled pairwise-distance matrix in single precision. The permutation
    // statistic is a deterministic function of the group assignment either
    // way, so float rounding costs a negligible amount of power and no
    // validity.
    const std::size_t na = a.replicates;
    const std::size_t n = na + b.replicates;
    std::vector<float> dist(n * n, 0.0f);
    const auto point = [&](std::size_t i) -> const double* {
        return i < na ? a.data.data() + i * d : b.data.data() + (i - na) * d;
    };
    parallel_for(n, options.threads, [&](std::size_t i) {
        const double* pi = point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* pj = point(j);
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = pi[c] - pj[c];
                s += diff * diff;
            }
            const float dij = static_cast<float>(std::sqrt(s));
            dist[i * n + j] = dij;
            dist[j * n + i] = dij;
        }
    });

    std::vector<double> row_tot(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += dist[i * n + j];
        row_tot[i] = s;
        total += s;
    }

    // Column 0 is the observed assignment; columns 1..P are permutations
    // drawn sequentially from one stream, so the batch split and thread
    // count cannot change them.
    const std::size_t columns = options.permutations + 1;
    std::vector<std::uint8_t> member(n * columns);
    for (std::size_t i = 0; i < n; ++i) member[i * columns] = i < na ? 1 : 0;
    {
        rng::Stream stream(options.seed,
                           rng::stream_id(options.stream_base, rng::Lane::permutation, 0));
        std::vector<std::uint32_t> pool(n);
        for (std::size_t p = 1; p < columns; ++p) {
            std::iota(pool.begin(), pool.end(), 0u);
            for (std::size_t i = n - 1; i > 0; --i)
                std::swap(pool[i], pool[stream.below(static_cast<std::uint32_t>(i + 1))]);
            for (std::size_t i = 0; i < na; ++i) member[pool[i] * columns + p] = 1;
        }
    }

    // Batched quadratic forms: for a tile of assignments, one pass over the
    // distance matrix yields every S_AA and S_BB.
    std::vector<EnergyParts> parts(columns);
    const std::size_t tiles = (columns + kPermTile - 1) / kPermTile;
    std::vector<std::vector<float>> z_tiles(tiles);
    parallel_for(tiles, options.threads, [&](std::size_t tile) {
        const std::size_t p0 = tile * kPermTile;
        const std::size_t width = std::min(kPermTile, columns - p0);
        auto& z = z_tiles[tile];
        z.assign(n * kPermTile, 0.0f);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = 0; p < width; ++p)
                z[i * kPermTile + p] = member[i * columns + p0 + p] ? 1.0f : 0.0f;

        std::vector<float> rowdot(kPermTile);
        for (std::size_t i = 0; i < n; ++i) {
            kernels::rowdot_batch(dist.data() + i * n, n, z.data(), kPermTile, rowdot.data());
            for (std::size_t p = 0; p < width; ++p) {
                if (member[i * columns + p0 + p])
                    parts[p0 + p].s_aa += rowdot[p];
                else
                    parts[p0 + p].s_bb += row_tot[i] - rowdot[p];
            }
        }
    });

    const double da = static_cast<double>(na);
    const double db = static_cast<double>(b.replicates);
    rep.energy = energy_from_parts(parts[0], total, da, db);
    std::size_t exceed = 0;
    for (std::size_t p = 1; p < columns; ++p)
        if (energy_from_parts(parts[p], total, da, db) >= rep.energy) ++exceed;
    rep.p_value = static_cast<double>(1 + exceed) / static_cast<double>(columns);
    rep.pass = rep.p_value > options.p_threshold;
    return rep;
}

}  // namespace assoc
