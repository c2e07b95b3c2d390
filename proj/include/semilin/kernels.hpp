#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, where the platform provides it, an AVX2 (x86-64) or
// NEON (aarch64) variant. The backend is chosen once at runtime from the
// CPU's capabilities; SEMILIN_SIMD=scalar in the environment forces the
// reference path.
//
// Every vector variant performs the same IEEE operations in the same order
// as the scalar reference, so results are bitwise identical across
// backends. Reductions whose result depends on summation order (dot, sum)
// only exist in scalar form and always accumulate left to right.

#include <cstddef>
#include <span>
#include <string_view>

namespace semilin::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

struct KernelTable {
    // out[i] = ((2u - left) - right) * inv_h2, zero outside [0, n)
    void (*neg_laplacian_1d)(const double* u, double* out, std::size_t n, double inv_h2);
    // 5-point stencil over an nx-by-ny row-major block with zero padding:
    // out = ((2u - l) - r) * inv_hx2 + ((2u - d) - t) * inv_hy2
    void (*neg_laplacian_2d)(const double* u, double* out, std::size_t nx, std::size_t ny,
                             double inv_hx2, double inv_hy2);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y[i] = x[i] + b * y[i]
    void (*xpby)(const double* x, double b, double* y, std::size_t n);
    // out[i] = x[i] + a * y[i]
    void (*waxpy)(const double* x, double a, const double* y, double* out, std::size_t n);
    // out[i] += c[i] * v[i]  (no fused multiply-add)
    void (*add_product)(const double* c, const double* v, double* out, std::size_t n);
    // max |x[i]|; order independent, so vectorized variants are exact
    double (*max_abs)(const double* x, std::size_t n);
};

bool backend_available(Backend b);

// Table for a specific backend; throws std::invalid_argument if unavailable.
const KernelTable& table(Backend b);

// Backend selected for this process.
Backend active_backend();
const KernelTable& active();

// Overrides the process-wide selection (tests and benchmarks).
void set_active_backend(Backend b);

// Order-preserving reductions.
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);

namespace detail {
const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace semilin::kernels
