#pragma once

#include <cstddef>

// Per-architecture kernel variants. Each lives in its own translation unit
// so it can be compiled with the matching target flags; availability is
// decided at runtime in kernels.cpp.

namespace sotm::kernels::detail {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
void weighted_accumulate_avx2(double* acc, const double* x, double w, std::size_t n);
#endif

#if defined(__aarch64__)
double squared_distance_neon(const double* a, const double* b, std::size_t n);
void weighted_accumulate_neon(double* acc, const double* x, double w, std::size_t n);
#endif

} // namespace sotm::kernels::detail
