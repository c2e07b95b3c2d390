#pragma once

// Steepest-descent mountain-pass search on the Full energy between the two
// one-signed minimizers.
//
// A path of P+1 nodes joins u_minus to u_plus. Each iteration
//   (a) locates the path maximum: the highest interior node, refined to the
//       energy maximum on the chord through its two neighbours,
//   (b) takes one Armijo step along -grad_preconditioned from that point,
//   (c) re-spaces the remaining nodes by discrete H1 arclength, keeping the
//       moved node in place.
// The iteration stops when the residual at the located maximum drops below
// grad_tol * scale.

#include <stdexcept>
#include <vector>

#include "semilin/critical_point.hpp"
#include "semilin/energy.hpp"

namespace semilin {

struct MPOptions {
    std::size_t segments = 21;  // P; the path holds P + 1 nodes
    std::size_t max_iters = 20000;
    double grad_tol = 1e-8;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;
    double poisson_tol = 1e-10;
    double perturbation = 0.1;  // times delta, sup norm of the phi_2 bump
    std::size_t max_restarts = 3;
    double collapse_tol = 1e-6;
};

struct PathState {
    std::vector<Field> nodes;
    std::vector<double> energies;
    std::size_t max_index = 0;
};

struct MPTrace {
    std::vector<double> max_energies;  // located path maximum per iteration
    std::vector<double> residuals;     // residual at that maximum
    std::vector<double> stepped;       // its energy after the Armijo step
    std::size_t restarts = 0;
};

class MountainPassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Straight path u_minus -> u_plus plus a bump along phi_2 of sup-norm
// `amplitude`, largest at the midpoint.
PathState initial_path(const EnergyModel& model, const Field& u_minus, const Field& u_plus,
                       std::size_t segments, double amplitude);

// Re-spaces nodes by H1 arclength on [0, pinned] and [pinned, P] separately
// and recomputes the energies of moved nodes.
void equidistribute(const EnergyModel& model, PathState& path, std::size_t pinned);

CriticalPoint find_mountain_pass(const EnergyModel& model, const CriticalPoint& u_minus,
                                 const CriticalPoint& u_plus, const MPOptions& opts = {},
                                 MPTrace* trace = nullptr);

}  // namespace semilin
