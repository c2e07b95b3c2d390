#pragma once

// Morse index of a critical point: the number of negative eigenvalues of the
// linearization v -> -Lap v - g'(u) v, computed by shifted inverse subspace
// iteration with Rayleigh-Ritz.

#include <stdexcept>
#include <vector>

#include "semilin/energy.hpp"

namespace semilin {

struct MorseResult {
    int index = 0;
    std::vector<double> eigenvalues;  // smallest, ascending
    bool degenerate = false;          // some eigenvalue within [-tol, tol]
    double tol = 0.0;
    std::size_t iterations = 0;
};

class MorseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `num_eigs` is a starting count; it is doubled while every computed
// eigenvalue is still below -tol. tol <= 0 selects 1e-6 * scale.
MorseResult morse_analysis(const EnergyModel& model, const Field& u, std::size_t num_eigs = 6,
                           double tol = 0.0);

int morse_index(const EnergyModel& model, const Field& u, std::size_t num_eigs = 6,
                double tol = 0.0);

}  // namespace semilin
