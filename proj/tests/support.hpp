#pragma once

#include <random>

#include "semilin/energy.hpp"
#include "semilin/nonlinearity.hpp"

namespace testing_support {

inline semilin::Nonlinearity cubic60(const semilin::DomainSpec& spec, int k) {
    return semilin::power_preset(spec, 60.0).with_delta(1.0).with_k(k);
}

inline semilin::DomainSpec p1_grid(std::size_t n = 127) { return semilin::DomainSpec::interval(1.0, n); }
inline semilin::DomainSpec p2_grid(std::size_t n = 63) { return semilin::DomainSpec::rectangle(1.0, 1.0, n, n); }

// Uniform entries in [lo, hi].
inline semilin::Field random_field(const semilin::DomainSpec& spec, std::mt19937_64& rng, double lo,
                                   double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    semilin::Field f(spec);
    for (double& v : f.values()) v = dist(rng);
    return f;
}

}  // namespace testing_support
