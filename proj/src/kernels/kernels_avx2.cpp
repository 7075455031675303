#include "kernels_impl.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace sotm::kernels::detail {

bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

// Four-lane partial sums; reassociates the reduction relative to the scalar
// reference but performs the same multiply/add operations per element.
double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; k < n; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

void weighted_accumulate_avx2(double* acc, const double* x, double w, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d sum =
            _mm256_add_pd(_mm256_loadu_pd(acc + k), _mm256_mul_pd(vw, _mm256_loadu_pd(x + k)));
        _mm256_storeu_pd(acc + k, sum);
    }
    for (; k < n; ++k) {
        acc[k] += w * x[k];
    }
}

} // namespace sotm::kernels::detail

#endif
