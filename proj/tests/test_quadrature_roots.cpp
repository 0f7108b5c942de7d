// Unit tests for the two scalar numerics workhorses: adaptive Simpson
// quadrature and the Brent root finder.

#include <cmath>
#include <catch2/catch_amalgamated.hpp>

#include "geotori/errors.hpp"
#include "geotori/quadrature.hpp"
#include "geotori/roots.hpp"

using namespace geotori;

TEST_CASE("adaptive Simpson reproduces closed-form integrals") {
    const double pi = 3.14159265358979323846;
    CHECK(std::abs(adaptive_simpson([](double x) { return std::sin(x); },
                                    0.0, pi, 1e-13) -
                   2.0) < 1e-12);
    CHECK(std::abs(adaptive_simpson([](double x) { return x * x; }, 0.0,
                                    1.0, 1e-13) -
                   1.0 / 3.0) < 1e-13);
    CHECK(std::abs(adaptive_simpson([](double x) { return std::exp(x); },
                                    0.0, 1.0, 1e-13) -
                   (std::exp(1.0) - 1.0)) < 1e-12);
    // Oscillatory integrand with a known value.
    CHECK(std::abs(adaptive_simpson(
                       [](double x) { return std::cos(10.0 * x); }, 0.0,
                       1.0, 1e-13) -
                   std::sin(10.0) / 10.0) < 1e-12);
}

TEST_CASE("adaptive Simpson degenerate and error cases") {
    auto f = [](double x) { return x; };
    CHECK(adaptive_simpson(f, 2.0, 2.0, 1e-12) == 0.0);
    CHECK_THROWS_AS(adaptive_simpson(f, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(adaptive_simpson(f, 0.0, 1.0, -1e-12),
                    std::invalid_argument);
    // Depth exhaustion on a rapidly oscillating integrand.
    CHECK_THROWS_AS(adaptive_simpson(
                        [](double x) { return std::sin(500.0 * x); }, 0.0,
                        3.0, 1e-14, 3),
                    IntegrationError);
    // Non-finite integrand values are refused rather than averaged over.
    CHECK_THROWS_AS(adaptive_simpson(
                        [](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0,
                        1e-12),
                    IntegrationError);
}

TEST_CASE("Brent finds bracketed roots to tolerance") {
    const double pi = 3.14159265358979323846;
    const RootResult r1 = brent([](double x) { return std::cos(x); }, 1.0,
                                2.0, 1e-14, 1e-14);
    CHECK(r1.converged);
    CHECK(std::abs(r1.x - pi / 2.0) < 1e-13);

    // Classic cubic: x^3 - 2x - 5 has its real root near 2.0945515.
    const RootResult r2 = brent(
        [](double x) { return (x * x - 2.0) * x - 5.0; }, 2.0, 3.0);
    CHECK(r2.converged);
    CHECK(std::abs(r2.x - 2.0945514815423265) < 1e-10);
    CHECK(std::abs(r2.fx) <= 1e-10);
    CHECK(r2.iterations < 40);

    // An exact zero at an endpoint is returned immediately.
    const RootResult r3 =
        brent([](double x) { return x; }, 0.0, 1.0);
    CHECK(r3.converged);
    CHECK(r3.x == 0.0);
}

TEST_CASE("Brent argument validation and iteration budget") {
    auto pos = [](double) { return 1.0; };
    CHECK_THROWS_AS(brent(pos, 0.0, 1.0), std::invalid_argument);
    auto lin = [](double x) { return x - 0.5; };
    CHECK_THROWS_AS(brent(lin, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(brent(lin, 0.0, 1.0, -1.0), std::invalid_argument);
    // Two iterations from a unit bracket cannot push cos below 1e-15 or
    // shrink the bracket to 1e-15, so the budget must exhaust.
    CHECK_THROWS_AS(brent([](double x) { return std::cos(x); }, 1.0, 2.0,
                          1e-15, 1e-15, 2),
                    RootFindingError);
}
