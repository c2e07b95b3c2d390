#pragma once

// Coercive minimization of the Plus / Minus truncated energies by Armijo
// backtracking along the H1_0 (Poisson-preconditioned) gradient.

#include <stdexcept>
#include <vector>

#include "semilin/critical_point.hpp"
#include "semilin/energy.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {

struct DescentOptions {
    std::size_t max_iters = 5000;
    double grad_tol = 1e-8;  // on sup |grad_residual|, relative to nl.scale()
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;
    double poisson_tol = 1e-10;
    double min_step = 1e-16;
};

// Per-iteration record, mostly for tests.
struct DescentTrace {
    std::vector<double> energies;    // phi at each iterate, starting with u0
    std::vector<double> increments;  // accurately evaluated phi changes
    std::vector<double> steps;
    std::vector<double> slopes;      // directional derivative at each accepted step
};

class InitialGuessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// +/- s phi_1 with s = 0.5 delta / |phi_1|_inf. Throws InitialGuessError when
// the energy of the guess is not negative.
Field initial_guess(const EnergyModel& model, const Eigenpair& phi1);

// Never throws on non-convergence: the returned point carries converged =
// false and a status message.
CriticalPoint minimize(const EnergyModel& model, const Field& u0, const DescentOptions& opts = {},
                       DescentTrace* trace = nullptr);

}  // namespace semilin
