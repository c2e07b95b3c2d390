#include "semilin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "semilin/integrate.hpp"

namespace semilin {
namespace {

constexpr std::size_t kEnergySamples = 64;

ShotResult integrate(const Nonlinearity& nl, double length, double slope, std::size_t steps,
                     std::size_t grid_n, bool track_energy) {
    if (steps < 1000) throw std::invalid_argument("shoot needs at least 1000 steps");
    if (!(length > 0.0)) throw std::invalid_argument("shoot needs a positive length");
    const double hs = length / static_cast<double>(steps);
    const double limit = 10.0 * std::max(nl.a_plus(), -nl.a_minus());

    std::vector<double> us{0.0}, vs{slope};
    us.reserve(steps + 1);
    vs.reserve(steps + 1);
    ShotResult out;
    out.slope = slope;
    double u = 0.0, v = slope;
    for (std::size_t i = 0; i < steps; ++i) {
        const double k1u = v, k1v = -nl.g(u);
        const double k2u = v + 0.5 * hs * k1v, k2v = -nl.g(u + 0.5 * hs * k1u);
        const double k3u = v + 0.5 * hs * k2v, k3v = -nl.g(u + 0.5 * hs * k2u);
        const double k4u = v + hs * k3v, k4v = -nl.g(u + hs * k3u);
        u += hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        us.push_back(u);
        vs.push_back(v);
        out.amplitude = std::max(out.amplitude, std::fabs(u));
        if (!(std::fabs(u) <= limit)) {
            out.blew_up = true;
            out.endpoint = std::copysign(std::numeric_limits<double>::infinity(), u);
            out.trajectory = std::move(us);
            return out;
        }
    }
    out.endpoint = u;

    if (grid_n == 0) {
        out.trajectory = us;
    } else {
        // Cubic Hermite between RK4 nodes; exact at coinciding nodes.
        out.trajectory.resize(grid_n + 2);
        for (std::size_t i = 0; i < grid_n + 2; ++i) {
            const double x = length * static_cast<double>(i) / static_cast<double>(grid_n + 1);
            if (i == 0 || i == grid_n + 1) {
                out.trajectory[i] = i == 0 ? 0.0 : u;
                continue;
            }
            const std::size_t num = i * steps;
            std::size_t k = num / (grid_n + 1);
            if (num % (grid_n + 1) == 0) {
                out.trajectory[i] = us[k];
                continue;
            }
            k = std::min(k, steps - 1);
            const double t = (x - static_cast<double>(k) * hs) / hs;
            const double t2 = t * t, t3 = t2 * t;
            out.trajectory[i] = (2 * t3 - 3 * t2 + 1) * us[k] + (t3 - 2 * t2 + t) * hs * vs[k] +
                                (-2 * t3 + 3 * t2) * us[k + 1] + (t3 - t2) * hs * vs[k + 1];
        }
    }

    if (track_energy) {
        auto G = [&](double t) {
            return integrate_adaptive([&](double s) { return nl.g(s); }, 0.0, t,
                                      1e-14 * std::max(1.0, 0.5 * slope * slope));
        };
        const double e0 = 0.5 * slope * slope;
        const double denom = e0 > 0.0 ? e0 : 1.0;
        const std::size_t stride = std::max<std::size_t>(1, steps / kEnergySamples);
        for (std::size_t i = stride; i <= steps; i += stride) {
            const double e = 0.5 * vs[i] * vs[i] + G(us[i]);
            out.energy_drift = std::max(out.energy_drift, std::fabs(e - e0) / denom);
        }
    }
    return out;
}

}  // namespace

ShotResult shoot(const Nonlinearity& nl, double length, double slope, std::size_t steps,
                 std::size_t grid_n) {
    return integrate(nl, length, slope, steps, grid_n, true);
}

ShotResult find_branch(const Nonlinearity& nl, double length, std::pair<double, double> bracket,
                       std::size_t steps, std::size_t grid_n) {
    auto [lo, hi] = bracket;
    ShotResult a = integrate(nl, length, lo, steps, 0, false);
    ShotResult b = integrate(nl, length, hi, steps, 0, false);
    if (a.blew_up || b.blew_up || !((a.endpoint > 0.0) != (b.endpoint > 0.0)) ||
        a.endpoint == 0.0 || b.endpoint == 0.0) {
        if (a.endpoint == 0.0 && !a.blew_up) return shoot(nl, length, lo, steps, grid_n);
        if (b.endpoint == 0.0 && !b.blew_up) return shoot(nl, length, hi, steps, grid_n);
        throw std::invalid_argument("find_branch: the endpoint does not change sign on the bracket");
    }
    const bool a_positive = a.endpoint > 0.0;
    double best = std::fabs(a.endpoint) < std::fabs(b.endpoint) ? lo : hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        const ShotResult m = integrate(nl, length, mid, steps, 0, false);
        if (m.blew_up) throw std::runtime_error("find_branch: blow-up inside the bracket");
        best = mid;
        if (std::fabs(m.endpoint) <= 1e-12 * std::max(1.0, m.amplitude)) break;
        if ((m.endpoint > 0.0) == a_positive)
            lo = mid;
        else
            hi = mid;
    }
    ShotResult out = shoot(nl, length, best, steps, grid_n);
    out.converged = std::fabs(out.endpoint) <= 1e-12 * std::max(1.0, out.amplitude);
    return out;
}

SweepResult sweep(const Nonlinearity& nl, double length, double lo, double hi, double resolution,
                  std::size_t steps, std::size_t grid_n) {
    if (!(hi > lo) || !(resolution > 0.0)) throw std::invalid_argument("sweep: empty slope range");
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / resolution));
    SweepResult out;
    for (std::size_t i = 0; i <= count; ++i) {
        const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
        const ShotResult r = integrate(nl, length, s, steps, 0, false);
        out.slopes.push_back(s);
        out.endpoints.push_back(r.blew_up ? std::numeric_limits<double>::quiet_NaN() : r.endpoint);
    }
    for (std::size_t i = 0; i + 1 < out.slopes.size(); ++i) {
        const double s0 = out.slopes[i], s1 = out.slopes[i + 1];
        const double e0 = out.endpoints[i], e1 = out.endpoints[i + 1];
        if (std::isnan(e0) || std::isnan(e1)) continue;
        if (s0 <= 0.0 && s1 >= 0.0) continue;
        if ((e0 > 0.0) == (e1 > 0.0) || e0 == 0.0) continue;
        out.brackets.emplace_back(s0, s1);
        out.branches.push_back(find_branch(nl, length, {s0, s1}, steps, grid_n));
    }
    return out;
}

std::size_t aligned_steps(std::size_t min_steps, std::size_t grid_n) {
    const std::size_t m = grid_n + 1;
    return (std::max<std::size_t>(min_steps, 1000) + m - 1) / m * m;
}

}  // namespace semilin
