#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "semilin/grid.hpp"

namespace semilin {

enum class Classification { PositiveMin, NegativeMin, MountainPass, Trivial };

const char* to_string(Classification c);

struct CriticalPoint {
    Field u;
    double energy = 0.0;
    double residual = 0.0;  // sup norm of grad_residual
    std::optional<int> morse_index;
    Classification classification = Classification::Trivial;
    bool converged = false;
    std::size_t iterations = 0;
    std::string status;  // "converged", or why not
};

}  // namespace semilin
