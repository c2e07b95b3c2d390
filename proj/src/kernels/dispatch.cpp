#include "semilin/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace semilin::kernels {
namespace {

Backend detect() {
    if (const char* env = std::getenv("SEMILIN_SIMD"); env && std::string(env) == "scalar")
        return Backend::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#elif defined(__aarch64__)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

std::atomic<Backend>& selected() {
    static std::atomic<Backend> b{detect()};
    return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(b)));
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return detail::avx2_table();
#endif
#if defined(__aarch64__)
        case Backend::Neon: return detail::neon_table();
#endif
        default: return detail::scalar_table();
    }
}

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

const KernelTable& active() { return table(active_backend()); }

void set_active_backend(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(b)));
    selected().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

}  // namespace semilin::kernels
