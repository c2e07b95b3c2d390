#pragma once

// 1D shooting for -u'' = g(u), u(0) = u(L) = 0, with the untruncated g.
// Independent of the variational solver; used to check its output.

#include <cstddef>
#include <utility>
#include <vector>

#include "semilin/nonlinearity.hpp"

namespace semilin {

struct ShotResult {
    double slope = 0.0;     // u'(0)
    double endpoint = 0.0;  // u(L)
    // u at x_i = i L / (n + 1), i = 0..n+1, boundaries included. With
    // grid_n = 0 the RK4 nodes themselves are returned.
    std::vector<double> trajectory;
    bool blew_up = false;
    double amplitude = 0.0;     // max |u| along the integration
    double energy_drift = 0.0;  // max relative change of u'^2/2 + G(u)
    bool converged = true;      // find_branch only
};

// Classical RK4 with step L / steps. Needs steps >= 1000. Integration stops
// once |u| exceeds 10 max(a_plus, -a_minus).
ShotResult shoot(const Nonlinearity& nl, double length, double slope, std::size_t steps,
                 std::size_t grid_n = 0);

// Bisection on the slope until |u(L)| <= 1e-12 max(1, amplitude). The
// endpoint must change sign across the bracket.
ShotResult find_branch(const Nonlinearity& nl, double length, std::pair<double, double> bracket,
                       std::size_t steps, std::size_t grid_n = 0);

struct SweepResult {
    std::vector<double> slopes;
    std::vector<double> endpoints;  // NaN where the shot blew up
    std::vector<std::pair<double, double>> brackets;
    std::vector<ShotResult> branches;  // one per bracket, in slope order
};

// Shoots on a uniform slope grid over [lo, hi] and refines every sign
// change of the endpoint into a branch. Brackets touching slope 0 are
// skipped, that is the trivial solution.
SweepResult sweep(const Nonlinearity& nl, double length, double lo, double hi, double resolution,
                  std::size_t steps, std::size_t grid_n = 0);

// Grid-node samples of the branch on n interior nodes: steps is rounded up
// to a multiple of n + 1 so that every node is an RK4 node.
std::size_t aligned_steps(std::size_t min_steps, std::size_t grid_n);

}  // namespace semilin
