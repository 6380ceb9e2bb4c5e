#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "assoc/marginal.hpp"
#include "assoc/model.hpp"

namespace assoc {

// One realized path. `uniforms` is the copula-scale sequence Phi(Z_t); for a
// continuous marginal F, `values` holds X_t = F^{-1}(U_t) and `uniforms` is
// kept as the exact pre-image (the probability-integral-transform scale on
// which all empirical-process statistics are computed).
struct SamplePath {
    std::vector<double> uniforms;
    std::vector<double> values;  // empty when the marginal is uniform01
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string model_id;
    std::string marginal_id;

    std::span<const double> uniform_scale() const { return uniforms; }
    std::span<const double> marginal_scale() const {
        return values.empty() ? std::span<const double>(uniforms) : std::span<const double>(values);
    }
};

struct PathEnsemble {
    GaussianLinearModel model;
    MarginalSpec marginal;
    std::size_t n = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    std::vector<double> uniforms;  // replicates x n, row-major
    std::vector<double> values;    // empty when the marginal is uniform01

    std::span<const double> uniform_row(std::size_t r) const {
        return {uniforms.data() + r * n, n};
    }
    std::span<const double> value_row(std::size_t r) const {
        return values.empty() ? uniform_row(r) : std::span<const double>{values.data() + r * n, n};
    }
};

// Fills `out` (length n) with the uniform01 path of replicate stream
// (seed, stream_id): n + j_max latent normals, moving-average filter, Phi.
void generate_path_uniforms(const GaussianLinearModel& model, std::size_t n, std::uint64_t seed,
                            std::uint64_t stream_id, std::span<double> out);

// Streaming generation: calls fn(r, uniform01 path of replicate r) for every
// r in [0, replicates), parallel over replicates. fn must only touch
// per-replicate state; paths for replicate r come from stream
// (seed, stream_base + r) regardless of thread count.
void for_each_path(const GaussianLinearModel& model, std::size_t n, std::size_t replicates,
                   std::uint64_t seed, std::uint64_t stream_base, int threads,
                   const std::function<void(std::size_t, std::span<const double>)>& fn);

PathEnsemble sample_paths(const GaussianLinearModel& model, const MarginalSpec& marginal,
                          std::size_t n, std::size_t replicates, std::uint64_t seed,
                          std::uint64_t stream_base = 0, int threads = 0);

SamplePath sample_path(const GaussianLinearModel& model, const MarginalSpec& marginal,
                       std::size_t n, std::uint64_t seed, std::uint64_t stream_id = 0);

// Binary persistence: magic, n, R, seed, model hash header followed by the
// replicate-major float64 column (uniform scale).
void save_ensemble(const PathEnsemble& ensemble, const std::string& path);
PathEnsemble load_ensemble(const std::string& path);

}  // namespace assoc
