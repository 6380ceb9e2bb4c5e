// NEON kernel variants for aarch64 (NEON is baseline there, no runtime
// feature check needed beyond the architecture itself).

#if defined(__aarch64__)

#include <arm_neon.h>

#include "assoc/kernels.hpp"

namespace assoc::kernels::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void count_le_multi_neon(const double* x, std::size_t n, const double* thresholds,
                         std::size_t m, std::uint64_t* counts) {
    for (std::size_t k = 0; k < m; ++k) {
        const float64x2_t thr = vdupq_n_f64(thresholds[k]);
        uint64x2_t acc = vdupq_n_u64(0);
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) {
            uint64x2_t mask = vcleq_f64(vld1q_f64(x + i), thr);
            acc = vaddq_u64(acc, vshrq_n_u64(mask, 63));
        }
        std::uint64_t c = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
        for (; i < n; ++i) c += (x[i] <= thresholds[k]) ? 1u : 0u;
        counts[k] = c;
    }
}

void rowdot_batch_neon(const float* row, std::size_t n, const float* z,
                       std::size_t width, float* out) {
    std::size_t p = 0;
    for (; p + 16 <= width; p += 16) {
        float32x4_t acc0 = vdupq_n_f32(0.0f);
        float32x4_t acc1 = vdupq_n_f32(0.0f);
        float32x4_t acc2 = vdupq_n_f32(0.0f);
        float32x4_t acc3 = vdupq_n_f32(0.0f);
        for (std::size_t j = 0; j < n; ++j) {
            const float32x4_t v = vdupq_n_f32(row[j]);
            const float* zr = z + j * width + p;
            acc0 = vfmaq_f32(acc0, v, vld1q_f32(zr));
            acc1 = vfmaq_f32(acc1, v, vld1q_f32(zr + 4));
            acc2 = vfmaq_f32(acc2, v, vld1q_f32(zr + 8));
            acc3 = vfmaq_f32(acc3, v, vld1q_f32(zr + 12));
        }
        vst1q_f32(out + p, acc0);
        vst1q_f32(out + p + 4, acc1);
        vst1q_f32(out + p + 8, acc2);
        vst1q_f32(out + p + 12, acc3);
    }
    for (; p < width; ++p) {
        float s = 0.0f;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * z[j * width + p];
        out[p] = s;
    }
}

}  // namespace assoc::kernels::detail

#endif  // aarch64
