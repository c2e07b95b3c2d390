#include "semilin/integrate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace semilin {
namespace {

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double kronrod;
    double error;
};

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double pair = f(center - dx) + f(center + dx);
        k += kWgk[i] * pair;
        if (i % 2 == 1) g += kWg[i / 2] * pair;
    }
    return {k * half, std::fabs((k - g) * half)};
}

double recurse(const std::function<double(double)>& f, double a, double b, double tol,
               int depth, int max_depth) {
    const Estimate e = gk15(f, a, b);
    if (e.error <= tol) return e.kronrod;
    if (depth >= max_depth) throw std::runtime_error("adaptive quadrature: depth cap reached");
    const double m = 0.5 * (a + b);
    return recurse(f, a, m, 0.5 * tol, depth + 1, max_depth) +
           recurse(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return recurse(f, a, b, abs_tol, 0, max_depth);
}

}  // namespace semilin
