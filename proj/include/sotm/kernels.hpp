#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sotm::kernels {

// Arithmetic inner loops shared by the trainer, the quality measures and the
// Sammon projection. Every kernel has a scalar reference implementation and,
// where the build target supports it, SIMD variants selected at runtime.
// Variants are equivalence-tested against the scalar reference; they may
// differ from it only by floating-point summation order.

// Returns sum_k (a[k] - b[k])^2.
double squared_distance(const double* a, const double* b, std::size_t n);

// acc[k] += w * x[k] for k in [0, n).
void weighted_accumulate(double* acc, const double* x, double w, std::size_t n);

// Name of the variant currently dispatched to ("scalar", "avx2", "neon").
// The default is the widest variant the CPU supports; the SOTM_KERNEL
// environment variable overrides it at startup.
std::string_view active_backend();

// Selects a variant by name. Returns false (and leaves the selection
// unchanged) if the name is unknown or unsupported on this machine.
// Not thread-safe; intended for startup and tests.
bool set_backend(std::string_view name);

// Variants usable on this machine, scalar first.
std::vector<std::string> available_backends();

} // namespace sotm::kernels
