#include "sotm/kernels.hpp"

#include <cstdlib>

#include "kernels_impl.hpp"

namespace sotm::kernels {

namespace {

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

void weighted_accumulate_scalar(double* acc, const double* x, double w, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        acc[k] += w * x[k];
    }
}

struct Backend {
    const char* name;
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*weighted_accumulate)(double*, const double*, double, std::size_t);
};

constexpr Backend kScalar{"scalar", &squared_distance_scalar, &weighted_accumulate_scalar};

std::vector<Backend> supported_backends() {
    std::vector<Backend> list{kScalar};
#if defined(__x86_64__) || defined(_M_X64)
    if (detail::avx2_supported()) {
        list.push_back({"avx2", &detail::squared_distance_avx2, &detail::weighted_accumulate_avx2});
    }
#endif
#if defined(__aarch64__)
    list.push_back({"neon", &detail::squared_distance_neon, &detail::weighted_accumulate_neon});
#endif
    return list;
}

const Backend* find_backend(std::string_view name) {
    static const std::vector<Backend> supported = supported_backends();
    for (const Backend& b : supported) {
        if (name == b.name) return &b;
    }
    return nullptr;
}

const Backend* default_backend() {
    if (const char* env = std::getenv("SOTM_KERNEL")) {
        if (const Backend* b = find_backend(env)) return b;
    }
    static const std::vector<Backend> supported = supported_backends();
    return &supported.back(); // widest variant last
}

const Backend*& active_slot() {
    static const Backend* active = default_backend();
    return active;
}

} // namespace

double squared_distance(const double* a, const double* b, std::size_t n) {
    return active_slot()->squared_distance(a, b, n);
}

void weighted_accumulate(double* acc, const double* x, double w, std::size_t n) {
    active_slot()->weighted_accumulate(acc, x, w, n);
}

std::string_view active_backend() {
    return active_slot()->name;
}

bool set_backend(std::string_view name) {
    const Backend* b = find_backend(name);
    if (!b) return false;
    active_slot() = b;
    return true;
}

std::vector<std::string> available_backends() {
    std::vector<std::string> names;
    for (const Backend& b : supported_backends()) names.emplace_back(b.name);
    return names;
}

} // namespace sotm::kernels
