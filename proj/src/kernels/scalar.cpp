#include "semilin/kernels.hpp"

#include <cmath>

namespace semilin::kernels::detail {
namespace {

void neg_laplacian_1d(const double* u, double* out, std::size_t n, double inv_h2) {
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? u[i - 1] : 0.0;
        const double right = i + 1 < n ? u[i + 1] : 0.0;
        out[i] = ((2.0 * u[i] - left) - right) * inv_h2;
    }
}

void neg_laplacian_2d(const double* u, double* out, std::size_t nx, std::size_t ny,
                      double inv_hx2, double inv_hy2) {
    for (std::size_t j = 0; j < ny; ++j) {
        const double* row = u + j * nx;
        const double* down = j > 0 ? row - nx : nullptr;
        const double* up = j + 1 < ny ? row + nx : nullptr;
        double* dst = out + j * nx;
        for (std::size_t i = 0; i < nx; ++i) {
            const double c2 = 2.0 * row[i];
            const double l = i > 0 ? row[i - 1] : 0.0;
            const double r = i + 1 < nx ? row[i + 1] : 0.0;
            const double d = down ? down[i] : 0.0;
            const double t = up ? up[i] : 0.0;
            dst[i] = ((c2 - l) - r) * inv_hx2 + ((c2 - d) - t) * inv_hy2;
        }
    }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void waxpy(const double* x, double a, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void add_product(const double* c, const double* v, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += c[i] * v[i];
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{neg_laplacian_1d, neg_laplacian_2d, axpy, xpby, waxpy,
                               add_product, max_abs};
    return t;
}

}  // namespace semilin::kernels::detail
