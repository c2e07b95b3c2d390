// aarch64 only. Uses separate vmulq/vaddq (never vfmaq) to stay bitwise
// identical to the scalar reference.

#include "semilin/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace semilin::kernels::detail {
namespace {

constexpr std::size_t kLanes = 2;

inline float64x2_t stencil_term(float64x2_t c2, float64x2_t a, float64x2_t b, float64x2_t inv) {
    return vmulq_f64(vsubq_f64(vsubq_f64(c2, a), b), inv);
}

void neg_laplacian_1d(const double* u, double* out, std::size_t n, double inv_h2) {
    if (n < kLanes + 2) {
        scalar_table().neg_laplacian_1d(u, out, n, inv_h2);
        return;
    }
    const float64x2_t inv = vdupq_n_f64(inv_h2);
    out[0] = ((2.0 * u[0] - 0.0) - u[1]) * inv_h2;
    std::size_t i = 1;
    for (; i + kLanes < n; i += kLanes) {
        const float64x2_t c = vld1q_f64(u + i);
        const float64x2_t c2 = vaddq_f64(c, c);
        vst1q_f64(out + i, stencil_term(c2, vld1q_f64(u + i - 1), vld1q_f64(u + i + 1), inv));
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
    const float64x2_t ix = vdupq_n_f64(inv_hx2);
    const float64x2_t iy = vdupq_n_f64(inv_hy2);
    const float64x2_t zero = vdupq_n_f64(0.0);
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
            const float64x2_t c = vld1q_f64(row + i);
            const float64x2_t c2 = vaddq_f64(c, c);
            const float64x2_t d = down ? vld1q_f64(down + i) : zero;
            const float64x2_t t = up ? vld1q_f64(up + i) : zero;
            const float64x2_t xs = stencil_term(c2, vld1q_f64(row + i - 1), vld1q_f64(row + i + 1), ix);
            const float64x2_t ys = stencil_term(c2, d, t, iy);
            vst1q_f64(dst + i, vaddq_f64(xs, ys));
        }
        for (; i < nx; ++i) scalar_node(i);
    }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    const float64x2_t vb = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(vb, vld1q_f64(y + i))));
    for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void waxpy(const double* x, double a, const double* y, double* out, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(va, vld1q_f64(y + i))));
    for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void add_product(const double* c, const double* v, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(vld1q_f64(c + i), vld1q_f64(v + i))));
    for (; i < n; ++i) out[i] += c[i] * v[i];
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double m = std::fmax(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
    for (; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable t{neg_laplacian_1d, neg_laplacian_2d, axpy, xpby, waxpy,
                               add_product, max_abs};
    return t;
}

}  // namespace semilin::kernels::detail

#endif
