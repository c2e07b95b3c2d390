#pragma once

// Closed-form Dirichlet spectrum of the interval and the rectangle,
// counted with multiplicity.

#include <array>
#include <cstddef>
#include <vector>

#include "semilin/grid.hpp"

namespace semilin {

struct Eigenpair {
    std::size_t rank = 0;  // 1-based position in the ascending list
    double lambda = 0.0;
    // (m) in 1D, (m, n) in 2D; unused slot is 0
    std::array<int, 2> mode{0, 0};
    // Grid samples with discrete l2 norm 1.
    Field phi;
};

// The `count` smallest eigenpairs. Equal eigenvalues (relative gap below
// 1e-12) are ordered by the lexicographic mode tuple.
std::vector<Eigenpair> eigenpairs(const DomainSpec& spec, std::size_t count);

// Continuum eigenvalues only, same ordering as eigenpairs().
std::vector<double> eigenvalues(const DomainSpec& spec, std::size_t count);

// Largest k with lambda_k <= mu. Throws std::domain_error when mu <= lambda_1.
int sandwich_index(const DomainSpec& spec, double mu);

}  // namespace semilin
