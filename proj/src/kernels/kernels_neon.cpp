#include "kernels_impl.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace sotm::kernels::detail {

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
        acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    double sum = vaddvq_f64(acc);
    for (; k < n; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

void weighted_accumulate_neon(double* acc, const double* x, double w, std::size_t n) {
    const float64x2_t vw = vdupq_n_f64(w);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t sum = vaddq_f64(vld1q_f64(acc + k), vmulq_f64(vw, vld1q_f64(x + k)));
        vst1q_f64(acc + k, sum);
    }
    for (; k < n; ++k) {
        acc[k] += w * x[k];
    }
}

} // namespace sotm::kernels::detail

#endif
