#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops. Every kernel has a plain scalar reference
// implementation and, where the hardware allows it, a SIMD variant (AVX2+FMA
// on x86-64, NEON on aarch64) selected once at startup. The active variant
// can be overridden at runtime, which the equivalence tests use to compare
// both paths on identical inputs.

namespace assoc::kernels {

enum class Isa { scalar, avx2, neon };

// Variant chosen for this process (CPU detection, or the last force() call).
Isa active();

// Best variant the CPU supports.
Isa detect();

// Override the dispatch, e.g. force(Isa::scalar). Throws std::invalid_argument
// if the requested variant is not available on this machine.
void force(Isa isa);

const char* isa_name(Isa isa);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// counts[k] = #{ i < n : x[i] <= thresholds[k] }; thresholds need not be sorted.
void count_le_multi(const double* x, std::size_t n, const double* thresholds,
                    std::size_t m, std::uint64_t* counts);

// out[p] = sum_j row[j] * z[j*width + p] for p < width.
// z holds 0/1 floats, row-major with `width` columns; accumulation is single
// precision (the consumers tolerate that by construction).
void rowdot_batch(const float* row, std::size_t n, const float* z,
                  std::size_t width, float* out);

namespace detail {

// Scalar reference implementations, exposed so tests can pin them directly.
double dot_scalar(const double* a, const double* b, std::size_t n);
void count_le_multi_scalar(const double* x, std::size_t n, const double* thresholds,
                           std::size_t m, std::uint64_t* counts);
void rowdot_batch_scalar(const float* row, std::size_t n, const float* z,
                         std::size_t width, float* out);

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n);
void count_le_multi_avx2(const double* x, std::size_t n, const double* thresholds,
                         std::size_t m, std::uint64_t* counts);
void rowdot_batch_avx2(const float* row, std::size_t n, const float* z,
                       std::size_t width, float* out);
#endif

#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n);
void count_le_multi_neon(const double* x, std::size_t n, const double* thresholds,
                         std::size_t m, std::uint64_t* counts);
void rowdot_batch_neon(const float* row, std::size_t n, const float* z,
                       std::size_t width, float* out);
#endif

}  // namespace detail

}  // namespace assoc::kernels
