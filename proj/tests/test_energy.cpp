#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "semilin/energy.hpp"
#include "semilin/spectrum.hpp"
#include "support.hpp"

using namespace semilin;
using namespace testing_support;

TEST_CASE("energy of the zero field vanishes") {
    const EnergyModel m(p1_grid(), cubic60(p1_grid(), 2), TruncationMode::Full);
    CHECK(phi(m, Field(p1_grid())) == 0.0);
}

TEST_CASE("residual pairing is the derivative of the energy") {
    std::mt19937_64 rng(3);
    for (const DomainSpec& g : {p1_grid(63), p2_grid(15)}) {
        const EnergyModel full(g, cubic60(g, g.dim() == 1 ? 2 : 3), TruncationMode::Full);
        for (auto mode : {TruncationMode::Plus, TruncationMode::Minus, TruncationMode::Full}) {
            const EnergyModel m = full.with_mode(mode);
            for (int trial = 0; trial < 4; ++trial) {
                const Field u = random_field(g, rng, -6.0, 6.0);
                const Field d = random_field(g, rng, -1.0, 1.0);
                const double eps = 1e-5;
                const double fd = (phi(m, u + eps * d) - phi(m, u - eps * d)) / (2 * eps);
                const double exact = inner(grad_residual(m, u), d);
                CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("line probe agrees with energy differences") {
    std::mt19937_64 rng(5);
    const DomainSpec g = p1_grid(63);
    const EnergyModel m(g, cubic60(g, 2), TruncationMode::Full);
    const Field u = random_field(g, rng, -7.0, 7.0);
    const Field d = random_field(g, rng, -2.0, 2.0);
    const LineProbe probe(m, u, grad_residual(m, u), d);
    CHECK(probe.slope() == doctest::Approx(inner(grad_residual(m, u), d)));
    for (double t : {1e-3, 0.1, 0.5, 1.0, 3.0})
        CHECK(probe.increment(t) == doctest::Approx(phi(m, u + t * d) - phi(m, u)).epsilon(1e-10).scale(1.0));
    CHECK(probe.increment(0.0) == 0.0);
}

TEST_CASE("preconditioned gradient inverts the Laplacian on the source") {
    const DomainSpec g = p2_grid(15);
    const EnergyModel m(g, cubic60(g, 3), TruncationMode::Plus);
    std::mt19937_64 rng(9);
    const Field u = random_field(g, rng, -2.0, 5.0);
    const Field grad = grad_preconditioned(m, u, 1e-12);
    // -Lap(grad) = -Lap u - g(u) = residual
    CHECK(sup_norm(apply_neg_laplacian(g, grad) - grad_residual(m, u)) < 1e-9 * sup_norm(grad_residual(m, u)) + 1e-9);
}

TEST_CASE("coercivity bound for the Plus energy") {
    std::mt19937_64 rng(17);
    for (const DomainSpec& g : {p1_grid(63), p2_grid(15)}) {
        const EnergyModel m(g, cubic60(g, g.dim() == 1 ? 2 : 3), TruncationMode::Plus);
        const double bound = max_abs_antiderivative(m.nl(), TruncationMode::Plus) * g.measure();
        for (int i = 0; i < 200; ++i) {
            const Field u = random_field(g, rng, -20.0, 20.0);
            const double h1 = h1_seminorm(u);
            CHECK(phi(m, u) >= 0.5 * h1 * h1 - bound);
        }
    }
}

TEST_CASE("negative energy along the first eigenfunction") {
    for (const DomainSpec& g : {p1_grid(), p2_grid()}) {
        const EnergyModel m(g, cubic60(g, g.dim() == 1 ? 2 : 3), TruncationMode::Plus);
        const Field phi1 = eigenpairs(g, 1)[0].phi;
        const Field u = (0.5 * m.nl().delta() / sup_norm(phi1)) * phi1;
        CHECK(phi(m, u) < 0.0);
    }
}

TEST_CASE("Plus and Full energies agree on fields inside [0, a+]") {
    std::mt19937_64 rng(8);
    for (const DomainSpec& g : {p1_grid(63), p2_grid(15)}) {
        const EnergyModel full(g, cubic60(g, g.dim() == 1 ? 2 : 3), TruncationMode::Full);
        const EnergyModel plus = full.with_mode(TruncationMode::Plus);
        const EnergyModel minus = full.with_mode(TruncationMode::Minus);
        for (int trial = 0; trial < 20; ++trial) {
            const Field u = random_field(g, rng, 0.0, full.nl().a_plus());
            CHECK(phi(plus, u) == doctest::Approx(phi(full, u)).epsilon(1e-14));
            CHECK(phi(minus, -u) == doctest::Approx(phi(full, -u)).epsilon(1e-14));
        }
    }
}
