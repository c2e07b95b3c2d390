#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "semilin/integrate.hpp"
#include "semilin/spectrum.hpp"
#include "support.hpp"

using namespace semilin;
using testing_support::cubic60;
using testing_support::p1_grid;
using testing_support::p2_grid;

TEST_CASE("Gauss-Kronrod integrates smooth functions") {
    CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(integrate_adaptive([](double x) { return std::cos(40 * x); }, 0.0, 2.0, 1e-13) ==
          doctest::Approx(std::sin(80.0) / 40).epsilon(1e-11));
    CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 0.0, 1e-14) == doctest::Approx(-0.5));
}

TEST_CASE("cubic preset roots and antiderivative") {
    const Nonlinearity nl = cubic60(p1_grid(), 2);
    CHECK(nl.a_plus() == doctest::Approx(std::sqrt(60.0)).epsilon(1e-15));
    CHECK(nl.a_minus() == doctest::Approx(-std::sqrt(60.0)).epsilon(1e-15));
    CHECK(antiderivative(nl, TruncationMode::Full, 1.0) == doctest::Approx(29.75).epsilon(1e-13));
    CHECK(antiderivative(nl, TruncationMode::Full, nl.a_plus()) == doctest::Approx(900.0).epsilon(1e-13));
    CHECK(antiderivative(nl, TruncationMode::Plus, 100.0) == doctest::Approx(900.0).epsilon(1e-13));
    CHECK(antiderivative(nl, TruncationMode::Plus, -1.0) == 0.0);
    CHECK(antiderivative(nl, TruncationMode::Minus, -1.0) == doctest::Approx(29.75).epsilon(1e-13));
    // sup over [0, sqrt 60] of 60t - t^3 sits at t = sqrt 20
    CHECK(nl.scale() == doctest::Approx(40.0 * std::sqrt(20.0)).epsilon(1e-6));
    CHECK(nl.sup_gprime() == doctest::Approx(60.0));
}

TEST_CASE("Plus and Minus truncations add up to Full") {
    const Nonlinearity nl = cubic60(p1_grid(), 2);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-12.0, 12.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = d(rng);
        CHECK(truncate(nl, TruncationMode::Plus, t) + truncate(nl, TruncationMode::Minus, t) ==
              truncate(nl, TruncationMode::Full, t));
    }
    CHECK(truncate(nl, TruncationMode::Full, 9.0) == 0.0);
    CHECK(truncate(nl, TruncationMode::Full, 2.0) == nl.g(2.0));
}

TEST_CASE("antiderivative remainder matches the difference of antiderivatives") {
    const Nonlinearity nl = cubic60(p1_grid(), 2);
    for (auto mode : {TruncationMode::Plus, TruncationMode::Minus, TruncationMode::Full})
        for (double t : {-8.0, -3.0, -0.5, 0.0, 0.7, 4.0, 7.7})
            for (double dt : {-2.0, -0.3, 1e-3, 0.5, 3.0}) {
                const double direct = antiderivative(nl, mode, t + dt) - antiderivative(nl, mode, t) -
                                      truncate(nl, mode, t) * dt;
                CHECK(antiderivative_remainder(nl, mode, t, dt) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
            }
}

TEST_CASE("condition (g) on the presets") {
    const ValidationReport p1 = validate_condition_g(cubic60(p1_grid(), 2), p1_grid());
    CHECK(p1.passed);
    CHECK(p1.derived_k == 2);
    CHECK(p1.samples == 1000);
    CHECK_FALSE(p1.boundary_equality);
    CHECK(validate_condition_g(cubic60(p2_grid(), 3), p2_grid()).passed);
}

TEST_CASE("condition (g) failures are reported, not thrown") {
    const ValidationReport wrong_k = validate_condition_g(cubic60(p1_grid(), 3), p1_grid());
    CHECK_FALSE(wrong_k.passed);
    bool saw = false;
    for (const auto& f : wrong_k.failures) saw = saw || f.check == "sandwich_index";
    CHECK(saw);

    const ValidationReport k1 = validate_condition_g(cubic60(p1_grid(), 1), p1_grid());
    CHECK_FALSE(k1.passed);
    CHECK(k1.failures.front().check == "k_at_least_2");

    // delta too wide: g(t)/t drops below lambda_2 = 4 pi^2 once t^2 > 60 - 4 pi^2
    const ValidationReport wide = validate_condition_g(cubic60(p1_grid(), 2).with_delta(5.0), p1_grid());
    CHECK_FALSE(wide.passed);
}

TEST_CASE("boundary equality is detected") {
    const double l2 = 4 * std::numbers::pi * std::numbers::pi;
    const Nonlinearity nl("resonant", [=](double t) { return l2 * t - t * t * t; },
                          [=](double t) { return l2 - 3 * t * t; }, -std::sqrt(l2), std::sqrt(l2), 0.5, 2);
    CHECK(validate_condition_g(nl, p1_grid()).boundary_equality);
}

TEST_CASE("preset search derives k and delta") {
    const Nonlinearity auto_p1 = power_preset(p1_grid(), 60.0);
    CHECK(auto_p1.k() == 2);
    // g(t)/t = 60 - t^2 >= 4 pi^2 requires |t| <= sqrt(60 - 4 pi^2)
    CHECK(auto_p1.delta() <= std::sqrt(60.0 - 4 * std::numbers::pi * std::numbers::pi) + 1e-9);
    CHECK(auto_p1.delta() > 4.0);
    CHECK(power_preset(p2_grid(), 60.0).k() == 3);
    CHECK_THROWS(power_preset(p1_grid(), 30.0));  // below lambda_2
}

TEST_CASE("structural constraints") {
    auto g = [](double t) { return t; };
    CHECK_THROWS_AS(Nonlinearity("x", g, g, 1.0, 2.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity("x", g, g, -1.0, 2.0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity("x", g, g, -1.0, 2.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("truncations are bounded and integrate back to themselves") {
    const Nonlinearity nl = cubic60(p1_grid(), 2);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> d(-15.0, 15.0);
    const double kinks[] = {nl.a_minus(), 0.0, nl.a_plus()};
    int sampled = 0;
    while (sampled < 200) {
        const double t = d(rng);
        bool near = false;
        for (double k : kinks) near = near || std::fabs(t - k) < 1e-3;
        if (near) continue;
        ++sampled;
        for (auto mode : {TruncationMode::Plus, TruncationMode::Minus, TruncationMode::Full}) {
            CHECK(std::fabs(truncate(nl, mode, t)) <= nl.scale());
            const double fd = (antiderivative(nl, mode, t + 1e-6) - antiderivative(nl, mode, t - 1e-6)) / 2e-6;
            CHECK(std::fabs(fd - truncate(nl, mode, t)) <= 1e-4 * nl.scale());
        }
    }
}

TEST_CASE("Plus antiderivative dominates the second eigenvalue below delta") {
    for (const DomainSpec& g : {p1_grid(), p2_grid()}) {
        const Nonlinearity nl = cubic60(g, g.dim() == 1 ? 2 : 3);
        const double l2 = eigenvalues(g, 2)[1];
        for (int i = 1; i < 100; ++i) {
            const double t = nl.delta() * i / 100.0;
            CHECK(antiderivative(nl, TruncationMode::Plus, t) >= 0.5 * l2 * t * t);
        }
    }
}
