// Compiled with -mavx2; only reached after a runtime CPU check.

#include "semilin/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace semilin::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d stencil_term(__m256d c2, __m256d a, __m256d b, __m256d inv) {
    return _mm256_mul_pd(_mm256_sub_pd(_mm256_sub_pd(c2, a), b), inv);
}

void neg_laplacian_1d(const double* u, double* out, std::size_t n, double inv_h2) {
    if (n < kLanes + 2) {
        scalar_table().neg_laplacian_1d(u, out, n, inv_h2);
        return;
    }
    const __m256d inv = _mm256_set1_pd(inv_h2);
    out[0] = ((2.0 * u[0] - 0.0) - u[1]) * inv_h2;
    std::size_t i = 1;
    for (; i + kLanes < n; i += kLanes) {
        const __m256d c = _mm256_loadu_pd(u + i);
        const __m256d c2 = _mm256_add_pd(c, c);
        const __m256d l = _mm256_loadu_pd(u + i - 1);
        const __m256d r = _mm256_loadu_pd(u + i + 1);
        _mm256_storeu_pd(out + i, stencil_term(c2, l, r, inv));
    }
    for (; i < n; ++i) {
        const double right = i + 1 < n ? u[i + 1] : 0.0;
        out[i] = ((2.0 * u[i] - u[i - 1]) - right) * inv_h2;
    }
}

void neg_laplacian_2d(const double* u, double* out, std::size_t nx, std::size_t ny,
                      double inv_hx2, double inv_hy2) {
    if (nx < kLanes + 2) {
        scalar_table().neg_laplacian_2d(u, out, nx, ny, inv_hx2, inv_hy2);
        return;
    }
    const __m256d ix = _mm256_set1_pd(inv_hx2);
    const __m256d iy = _mm256_set1_pd(inv_hy2);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t j = 0; j < ny; ++j) {
        const double* row = u + j * nx;
        const double* down = j > 0 ? row - nx : nullptr;
        const double* up = j + 1 < ny ? row + nx : nullptr;
        double* dst = out + j * nx;

        auto scalar_node = [&](std::size_t i) {
            const double c2 = 2.0 * row[i];
            const double l = i > 0 ? row[i - 1] : 0.0;
            const double r = i + 1 < nx ? row[i + 1] : 0.0;
            const double d = down ? down[i] : 0.0;
            const double t = up ? up[i] : 0.0;
            dst[i] = ((c2 - l) - r) * inv_hx2 + ((c2 - d) - t) * inv_hy2;
        };

        scalar_node(0);
        std::size_t i = 1;
        for (; i + kLanes < nx; i += kLanes) {
            const __m256d c = _mm256_loadu_pd(row + i);
            const __m256d c2 = _mm256_add_pd(c, c);
            const __m256d l = _mm256_loadu_pd(row + i - 1);
            const __m256d r = _mm256_loadu_pd(row + i + 1);
            const __m256d d = down ? _mm256_loadu_pd(down + i) : zero;
            const __m256d t = up ? _mm256_loadu_pd(up + i) : zero;
            const __m256d xs = stencil_term(c2, l, r, ix);
            const __m256d ys = stencil_term(c2, d, t, iy);
            _mm256_storeu_pd(dst + i, _mm256_add_pd(xs, ys));
        }
        for (; i < nx; ++i) scalar_node(i);
    }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d prod = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), prod));
    }
    for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void waxpy(const double* x, double a, const double* y, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), prod));
    }
    for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void add_product(const double* c, const double* v, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(v + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), prod));
    }
    for (; i < n; ++i) out[i] += c[i] * v[i];
}

double max_abs(const double* x, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, acc);
    double m = 0.0;
    for (double v : lanes) m = std::fmax(m, v);
    for (; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{neg_laplacian_1d, neg_laplacian_2d, axpy, xpby, waxpy,
                               add_product, max_abs};
    return t;
}

}  // namespace semilin::kernels::detail
