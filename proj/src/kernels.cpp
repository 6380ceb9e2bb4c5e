#include "assoc/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace assoc::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    // Four partial sums: keeps the reference numerically close to the
    // unrolled SIMD variants and lets the compiler pipeline the adds.
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

void count_le_multi_scalar(const double* x, std::size_t n, const double* thresholds,
                           std::size_t m, std::uint64_t* counts) {
    for (std::size_t k = 0; k < m; ++k) counts[k] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        for (std::size_t k = 0; k < m; ++k) counts[k] += (v <= thresholds[k]) ? 1u : 0u;
    }
}

void rowdot_batch_scalar(const float* row, std::size_t n, const float* z,
                         std::size_t width, float* out) {
    for (std::size_t p = 0; p < width; ++p) out[p] = 0.0f;
    for (std::size_t j = 0; j < n; ++j) {
        const float v = row[j];
        const float* zr = z + j * width;
        for (std::size_t p = 0; p < width; ++p) out[p] += v * zr[p];
    }
}

}  // namespace detail

namespace {

std::atomic<Isa> g_active{Isa::scalar};
std::atomic<bool> g_initialized{false};

Isa detect_impl() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
    return Isa::scalar;
#elif defined(__aarch64__)
    return Isa::neon;
#else
    return Isa::scalar;
#endif
}

Isa ensure_init() {
    if (!g_initialized.load(std::memory_order_acquire)) {
        g_active.store(detect_impl(), std::memory_order_release);
        g_initialized.store(true, std::memory_order_release);
    }
    return g_active.load(std::memory_order_relaxed);
}

}  // namespace

Isa detect() { return detect_impl(); }

Isa active() { return ensure_init(); }

void force(Isa isa) {
    if (isa != Isa::scalar && isa != detect_impl())
        throw std::invalid_argument(std::string("kernel variant not available on this cpu: ") +
                                    isa_name(isa));
    ensure_init();
    g_active.store(isa, std::memory_order_release);
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

double dot(const double* a, const double* b, std::size_t n) {
    switch (active()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: return detail::dot_avx2(a, b, n);
#endif
#if defined(__aarch64__)
        case Isa::neon: return detail::dot_neon(a, b, n);
#endif
        default: return detail::dot_scalar(a, b, n);
    }
}

void count_le_multi(const double* x, std::size_t n, const double* thresholds,
                    std::size_t m, std::uint64_t* counts) {
    switch (active()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: detail::count_le_multi_avx2(x, n, thresholds, m, counts); return;
#endif
#if defined(__aarch64__)
        case Isa::neon: detail::count_le_multi_neon(x, n, thresholds, m, counts); return;
#endif
        default: detail::count_le_multi_scalar(x, n, thresholds, m, counts); return;
    }
}

void rowdot_batch(const float* row, std::size_t n, const float* z,
                  std::size_t width, float* out) {
    switch (active()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: detail::rowdot_batch_avx2(row, n, z, width, out); return;
#endif
#if defined(__aarch64__)
        case Isa::neon: detail::rowdot_batch_neon(row, n, z, width, out); return;
#endif
        default: detail::rowdot_batch_scalar(row, n, z, width, out); return;
    }
}

}  // namespace assoc::kernels
