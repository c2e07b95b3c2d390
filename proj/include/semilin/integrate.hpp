#pragma once

#include <functional>

namespace semilin {

// Adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b]. Intervals
// are bisected until the Gauss/Kronrod difference on each piece is below its
// share of `abs_tol`. Throws std::runtime_error if the depth cap is hit.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 40);

}  // namespace semilin
