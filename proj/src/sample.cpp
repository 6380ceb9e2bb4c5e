#include "assoc/sample.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "assoc/errors.hpp"
#include "assoc/kernels.hpp"
#include "assoc/normal.hpp"
#include "assoc/parallel.hpp"
#include "assoc/rng.hpp"

namespace assoc {

namespace {

// Keeps ensembles comfortably inside desk-scale memory.
constexpr std::size_t kMaxEnsembleDoubles = std::size_t{1} << 28;  // 2 GiB per array

void check_capacity(std::size_t n, std::size_t replicates) {
    if (n == 0) throw std::invalid_argument("sample_paths: n must be >= 1");
    if (replicates == 0) throw std::invalid_argument("sample_paths: replicates must be >= 1");
    if (replicates > rng::kMaxLaneIndex)
        throw capacity_error("sample_paths: replicate count exceeds the stream lane capacity");
    if (n > kMaxEnsembleDoubles / replicates)
        throw capacity_error("sample_paths: n * replicates exceeds the ensemble capacity");
}

}  // namespace

void generate_path_uniforms(const GaussianLinearModel& model, std::size_t n, std::uint64_t seed,
                            std::uint64_t stream_id, std::span<double> out) {
    if (n == 0) throw std::invalid_argument("generate_path_uniforms: n must be >= 1");
    if (out.size() != n) throw std::invalid_argument("generate_path_uniforms: bad output span");
    const auto& a = model.coefficients;
    const std::size_t j_max = model.max_lag();

    rng::Stream stream(seed, stream_id);
    // The j_max extra normals are the burn-in: every output already sees a
    // full coefficient window, so the sampled stretch is exactly stationary.
    std::vector<double> eps(n + j_max);
    stream.fill_normal(eps);
    for (std::size_t t = 0; t < n; ++t) {
        const double z = kernels::dot(a.data(), eps.data() + t, a.size());
        out[t] = normal_cdf(z);
    }
}

void for_each_path(const GaussianLinearModel& model, std::size_t n, std::size_t replicates,
                   std::uint64_t seed, std::uint64_t stream_base, int threads,
                   const std::function<void(std::size_t, std::span<const double>)>& fn) {
    check_capacity(n, 1);
    if (replicates > rng::kMaxLaneIndex)
        throw capacity_error("for_each_path: replicate count exceeds the stream lane capacity");
    parallel_for(replicates, threads, [&](std::size_t r) {
        std::vector<double> path(n);
        generate_path_uniforms(model, n, seed,
                               rng::stream_id(stream_base, rng::Lane::paths, r), path);
        fn(r, path);
    });
}

PathEnsemble sample_paths(const GaussianLinearModel& model, const MarginalSpec& marginal,
                          std::size_t n, std::size_t replicates, std::uint64_t seed,
                          std::uint64_t stream_base, int threads) {
    check_capacity(n, replicates);
    PathEnsemble e;
    e.model = model;
    e.marginal = marginal;
    e.n = n;
    e.replicates = replicates;
    e.seed = seed;
    e.stream_base = stream_base;
    e.uniforms.resize(n * replicates);
    if (!marginal.is_uniform()) e.values.resize(n * replicates);

    parallel_for(replicates, threads, [&](std::size_t r) {
        std::span<double> row(e.uniforms.data() + r * n, n);
        generate_path_uniforms(model, n, seed,
                               rng::stream_id(stream_base, rng::Lane::paths, r), row);
        if (!marginal.is_uniform()) {
            double* vals = e.values.data() + r * n;
            for (std::size_t i = 0; i < n; ++i) vals[i] = marginal.quantile(row[i]);
        }
    });
    return e;
}

SamplePath sample_path(const GaussianLinearModel& model, const MarginalSpec& marginal,
                       std::size_t n, std::uint64_t seed, std::uint64_t stream_id) {
    SamplePath p;
    p.uniforms.resize(n);
    generate_path_uniforms(model, n, seed, stream_id, p.uniforms);
    if (!marginal.is_uniform()) {
        p.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.values[i] = marginal.quantile(p.uniforms[i]);
    }
    p.seed = seed;
    p.stream = stream_id;
    p.model_id = model.describe();
    p.marginal_id = marginal.name;
    return p;
}

namespace {

constexpr char kMagic[8] = {'A', 'S', 'O', 'C', 'P', 'E', '0', '1'};

struct EnsembleHeader {
    char magic[8];
    std::uint64_t n;
    std::uint64_t replicates;
    std::uint64_t seed;
    std::uint64_t model_hash;
};

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void save_ensemble(const PathEnsemble& ensemble, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw io_error("save_ensemble: cannot open " + path);
    EnsembleHeader h{};
    std::memcpy(h.magic, kMagic, sizeof kMagic);
    h.n = ensemble.n;
    h.replicates = ensemble.replicates;
    h.seed = ensemble.seed;
    h.model_hash = ensemble.model.hash();
    if (std::fwrite(&h, sizeof h, 1, f.get()) != 1 ||
        std::fwrite(ensemble.uniforms.data(), sizeof(double), ensemble.uniforms.size(),
                    f.get()) != ensemble.uniforms.size())
        throw io_error("save_ensemble: short write to " + path);
}

PathEnsemble load_ensemble(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw io_error("load_ensemble: cannot open " + path);
    EnsembleHeader h{};
    if (std::fread(&h, sizeof h, 1, f.get()) != 1 || std::memcmp(h.magic, kMagic, sizeof kMagic) != 0)
        throw io_error("load_ensemble: bad header in " + path);
    check_capacity(h.n, h.replicates);
    PathEnsemble e;
    e.n = h.n;
    e.replicates = h.replicates;
    e.seed = h.seed;
    e.marginal = uniform01_marginal();
    e.uniforms.resize(e.n * e.replicates);
    if (std::fread(e.uniforms.data(), sizeof(double), e.uniforms.size(), f.get()) !=
        e.uniforms.size())
        throw io_error("load_ensemble: short read from " + path);
    return e;
}

}  // namespace assoc
