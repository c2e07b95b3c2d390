#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "semilin/grid.hpp"

using namespace semilin;
using std::numbers::pi;

TEST_CASE("grid spacing and node counts") {
    const DomainSpec line = DomainSpec::interval(2.0, 3);
    CHECK(line.spacing(0) == doctest::Approx(0.5));
    CHECK(line.size() == 3);
    CHECK(line.coord(0, 2) == doctest::Approx(1.5));

    const DomainSpec rect = DomainSpec::rectangle(1.0, 2.0, 4, 9);
    CHECK(rect.size() == 36);
    CHECK(rect.cell_volume() == doctest::Approx(0.2 * 0.2));
    CHECK(rect.measure() == doctest::Approx(2.0));

    CHECK_THROWS_AS(DomainSpec::interval(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(DomainSpec::interval(-1.0, 10), std::invalid_argument);
}

TEST_CASE("fields reject foreign grids and non-finite data") {
    const DomainSpec a = DomainSpec::interval(1.0, 7);
    const DomainSpec b = DomainSpec::interval(1.0, 9);
    CHECK_THROWS_AS(Field(a, std::vector<double>(6, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(Field(a, std::vector<double>(7, NAN)), std::invalid_argument);
    Field u(a), v(b);
    CHECK_THROWS_AS(u += v, std::invalid_argument);
}

TEST_CASE("sampled sine is a discrete eigenvector of the stencil") {
    for (std::size_t n : {15u, 64u, 127u}) {
        const DomainSpec g = DomainSpec::interval(1.0, n);
        const double h = g.spacing(0);
        const Field s = Field::sample(g, [](double x, double) { return std::sin(2 * pi * x); });
        const Field ls = apply_neg_laplacian(g, s);
        const double mu = (2.0 - 2.0 * std::cos(2 * pi * h)) / (h * h);
        for (std::size_t i = 0; i < n; ++i) CHECK(ls[i] == doctest::Approx(mu * s[i]).epsilon(1e-10));
    }
}

TEST_CASE("quadratures") {
    const DomainSpec g = DomainSpec::interval(1.0, 99);
    const Field one = Field::sample(g, [](double, double) { return 1.0; });
    CHECK(integral(one) == doctest::Approx(1.0 - g.spacing(0)));
    // sum of sin^2(pi i/(n+1)) over the interior is (n+1)/2
    const Field s = Field::sample(g, [](double x, double) { return std::sin(pi * x); });
    CHECK(l2_norm(s) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(sup_norm(s) == doctest::Approx(1.0));
    CHECK(h1_seminorm(s) * h1_seminorm(s) == doctest::Approx(h1_inner(s, s)).epsilon(1e-12));
    CHECK(h1_seminorm(s) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("quadratic is reproduced exactly by the 1D Poisson solve") {
    const DomainSpec g = DomainSpec::interval(1.0, 63);
    const Field one = Field::sample(g, [](double, double) { return 1.0; });
    const Field w = solve_poisson(g, one, 1e-13);
    const Field exact = Field::sample(g, [](double x, double) { return 0.5 * x * (1 - x); });
    CHECK(sup_norm(w - exact) < 1e-12);
}

TEST_CASE("torsion function of the unit square at its centre") {
    // continuum value from the double sine series over odd modes
    double series = 0.0;
    for (int m = 1; m < 400; m += 2)
        for (int k = 1; k < 400; k += 2) {
            const double sign = ((m + k) / 2 - 1) % 2 == 0 ? 1.0 : -1.0;
            series += sign * 16.0 / (std::pow(pi, 4) * m * k * (m * m + k * k));
        }
    CHECK(series == doctest::Approx(0.07367).epsilon(1e-3));

    const DomainSpec g = DomainSpec::rectangle(1.0, 1.0, 63, 63);
    const Field one = Field::sample(g, [](double, double) { return 1.0; });
    const PoissonResult r = solve_poisson_detailed(g, one, 1e-12);
    CHECK(r.residual <= 1e-12);
    CHECK(r.solution[31 * 63 + 31] == doctest::Approx(series).epsilon(2e-3));
}

TEST_CASE("warm start changes nothing but the iteration count") {
    const DomainSpec g = DomainSpec::rectangle(1.0, 1.5, 31, 47);
    const Field f = Field::sample(g, [](double x, double y) { return x * x - y; });
    const PoissonResult cold = solve_poisson_detailed(g, f, 1e-12);
    const PoissonResult warm = solve_poisson_detailed(g, f, 1e-12, &cold.solution);
    CHECK(warm.iterations <= 1);
    CHECK(sup_norm(warm.solution - cold.solution) < 1e-10);
}

TEST_CASE("stencil is symmetric and positive") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (const DomainSpec& g : {DomainSpec::interval(1.0, 63), DomainSpec::rectangle(1.0, 2.0, 15, 31)}) {
        for (int trial = 0; trial < 20; ++trial) {
            Field u(g), v(g);
            for (double& x : u.values()) x = d(rng);
            for (double& x : v.values()) x = d(rng);
            const double uv = inner(apply_neg_laplacian(g, u), v), vu = inner(u, apply_neg_laplacian(g, v));
            CHECK(uv == doctest::Approx(vu).epsilon(1e-12));
            const double uu = inner(u, apply_neg_laplacian(g, u));
            CHECK(uu > 0.0);
            const double hs = h1_seminorm(u);
            CHECK(uu == doctest::Approx(hs * hs).epsilon(1e-12));
        }
    }
}

TEST_CASE("Poisson solve inverts the stencil and keeps signs") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (const DomainSpec& g : {DomainSpec::interval(1.0, 127), DomainSpec::rectangle(1.0, 1.0, 31, 31)}) {
        for (int trial = 0; trial < 5; ++trial) {
            Field rhs(g);
            for (double& x : rhs.values()) x = d(rng) < 0.3 ? 0.0 : d(rng);
            const double tol = 1e-10;
            const Field w = solve_poisson(g, rhs, tol);
            CHECK(sup_norm(apply_neg_laplacian(g, w) - rhs) <= tol * std::max(1.0, sup_norm(rhs)));
            for (double x : w.values()) CHECK(x >= 0.0);
        }
    }
}
