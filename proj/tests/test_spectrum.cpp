#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "semilin/spectrum.hpp"

using namespace semilin;
using std::numbers::pi;

TEST_CASE("interval eigenvalues are m^2 pi^2 / L^2") {
    const auto ev = eigenvalues(DomainSpec::interval(2.0, 63), 4);
    for (int m = 1; m <= 4; ++m) CHECK(ev[m - 1] == doctest::Approx(m * m * pi * pi / 4.0));
}

TEST_CASE("unit square ordering with the double eigenvalue") {
    const auto pairs = eigenpairs(DomainSpec::rectangle(1.0, 1.0, 31, 31), 4);
    const double expect[] = {2, 5, 5, 8};
    for (int i = 0; i < 4; ++i) CHECK(pairs[i].lambda == doctest::Approx(expect[i] * pi * pi));
    CHECK(pairs[1].mode == std::array<int, 2>{1, 2});
    CHECK(pairs[2].mode == std::array<int, 2>{2, 1});
    CHECK(pairs[3].mode == std::array<int, 2>{2, 2});
    for (std::size_t i = 0; i < 4; ++i) CHECK(pairs[i].rank == i + 1);
}

TEST_CASE("sampled eigenfunctions nearly solve the discrete problem") {
    for (const DomainSpec& g : {DomainSpec::interval(1.0, 127), DomainSpec::rectangle(1.0, 1.0, 63, 63),
                                DomainSpec::rectangle(2.0, 1.0, 63, 31)}) {
        const double h = g.spacing(0);
        for (const Eigenpair& p : eigenpairs(g, 4)) {
            CHECK(l2_norm(p.phi) == doctest::Approx(1.0).epsilon(1e-12));
            const Field r = apply_neg_laplacian(g, p.phi) - p.lambda * p.phi;
            CHECK(l2_norm(r) / (p.lambda * l2_norm(p.phi)) <= 2.0 * (pi * h) * (pi * h));
        }
    }
}

TEST_CASE("sandwich index") {
    CHECK(sandwich_index(DomainSpec::interval(1.0, 63), 60.0) == 2);
    CHECK(sandwich_index(DomainSpec::rectangle(1.0, 1.0, 63, 63), 60.0) == 3);
    CHECK(sandwich_index(DomainSpec::interval(1.0, 63), 4 * pi * pi) == 2);
    CHECK_THROWS_AS(sandwich_index(DomainSpec::interval(1.0, 63), pi * pi), std::domain_error);
    CHECK_THROWS_AS(sandwich_index(DomainSpec::interval(1.0, 63), 1.0), std::domain_error);
}

TEST_CASE("sandwich index grows with mu") {
    for (const DomainSpec& g : {DomainSpec::interval(1.0, 63), DomainSpec::rectangle(1.0, 1.0, 31, 31)}) {
        int last = 0;
        for (double mu = 1.01 * eigenvalues(g, 1)[0]; mu < 400.0; mu += 0.37) {
            const int k = sandwich_index(g, mu);
            CHECK(k >= last);
            last = k;
        }
        CHECK(last > 1);
    }
}
