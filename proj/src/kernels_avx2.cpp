// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers reach it only through the runtime dispatch in
// kernels.cpp after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "assoc/kernels.hpp"

namespace assoc::kernels::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum2 = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void count_le_multi_avx2(const double* x, std::size_t n, const double* thresholds,
                         std::size_t m, std::uint64_t* counts) {
    for (std::size_t k = 0; k < m; ++k) {
        const __m256d thr = _mm256_set1_pd(thresholds[k]);
        __m256i acc = _mm256_setzero_si256();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d v = _mm256_loadu_pd(x + i);
            // v <= thr gives all-ones lanes; shift to 0/1 and accumulate.
            __m256i mask = _mm256_castpd_si256(_mm256_cmp_pd(v, thr, _CMP_LE_OQ));
            acc = _mm256_add_epi64(acc, _mm256_srli_epi64(mask, 63));
        }
        alignas(32) std::uint64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        std::uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
        for (; i < n; ++i) c += (x[i] <= thresholds[k]) ? 1u : 0u;
        counts[k] = c;
    }
}

void rowdot_batch_avx2(const float* row, std::size_t n, const float* z,
                       std::size_t width, float* out) {
    std::size_t p = 0;
    // 64 accumulators (8 ymm registers) per stripe keeps the FMA units busy
    // while one broadcast load of row[j] feeds all of them.
    for (; p + 64 <= width; p += 64) {
        __m256 acc[8];
        for (int q = 0; q < 8; ++q) acc[q] = _mm256_setzero_ps();
        for (std::size_t j = 0; j < n; ++j) {
            const __m256 v = _mm256_set1_ps(row[j]);
            const float* zr = z + j * width + p;
            for (int q = 0; q < 8; ++q)
                acc[q] = _mm256_fmadd_ps(v, _mm256_loadu_ps(zr + 8 * q), acc[q]);
        }
        for (int q = 0; q < 8; ++q) _mm256_storeu_ps(out + p + 8 * q, acc[q]);
    }
    for (; p + 8 <= width; p += 8) {
        __m256 acc = _mm256_setzero_ps();
        for (std::size_t j = 0; j < n; ++j)
            acc = _mm256_fmadd_ps(_mm256_set1_ps(row[j]), _mm256_loadu_ps(z + j * width + p), acc);
        _mm256_storeu_ps(out + p, acc);
    }
    for (; p < width; ++p) {
        float s = 0.0f;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * z[j * width + p];
        out[p] = s;
    }
}

}  // namespace assoc::kernels::detail

#endif  // x86_64
