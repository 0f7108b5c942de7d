// Oracle tests for the reduced disk geometry: the arclength chart, the
// profile function and its derivatives, and the launch parametrization.
//
// The primary oracle is the closed antiderivative of the arclength
// integrand under u = sin ξ, evaluated in a branch-stable form for
// a < 1, a = 1, a > 1.  Frozen reference numbers below were computed
// independently with high-precision quadrature and agree with that
// antiderivative to full double precision.

#include <cmath>
#include <catch2/catch_amalgamated.hpp>

#include "geotori/errors.hpp"
#include "geotori/metric_profile.hpp"

using namespace geotori;

namespace {

// Closed form of 2π ∫₀^φ cos ξ √(a² cos²ξ + sin²ξ) dξ via u = sin ξ:
// the integrand becomes √(a² + (1 − a²) u²).
double arclength_oracle(double a, double phi) {
    const double u = std::sin(phi);
    const double c = 1.0 - a * a;
    double F;
    if (c > 0.0) { // a < 1
        const double rt = std::sqrt(a * a + c * u * u);
        F = 0.5 * u * rt +
            a * a / (2.0 * std::sqrt(c)) *
                std::log((std::sqrt(c) * u + rt) / a);
    } else if (c < 0.0) { // a > 1
        const double d = -c;
        const double rt = std::sqrt(a * a - d * u * u);
        F = 0.5 * u * rt +
            a * a / (2.0 * std::sqrt(d)) * std::asin(std::sqrt(d) * u / a);
    } else {
        F = u;
    }
    return 2.0 * kPi * F;
}

} // namespace

TEST_CASE("arclength chart matches the closed antiderivative") {
    for (double a : {0.3, 0.5, 2.0, 5.0}) {
        const EllipsoidGeometry g(a);
        for (int i = 0; i <= 32; ++i) {
            const double phi = (kPi / 2.0) * i / 32.0;
            const double got = g.radius(phi);
            const double want = arclength_oracle(a, phi);
            INFO("a=" << a << " phi=" << phi);
            CHECK(std::abs(got - want) <= 1e-9);
        }
        CHECK(std::abs(g.disk_radius() - arclength_oracle(a, kPi / 2.0)) <=
              1e-9);
        CHECK(std::abs(g.clifford_radius() - arclength_oracle(a, kPi / 4.0)) <=
              1e-9);
    }
}

TEST_CASE("frozen reference radii") {
    const EllipsoidGeometry g2(2.0);
    CHECK(std::abs(g2.disk_radius() - 10.739217663941870) <= 1e-8);
    CHECK(std::abs(g2.clifford_radius() - 8.294003551021934) <= 1e-8);
    const EllipsoidGeometry g05(0.5);
    CHECK(std::abs(g05.disk_radius() - 4.335941351672526) <= 1e-8);
    CHECK(std::abs(g05.clifford_radius() - 2.691868893685203) <= 1e-8);
    const EllipsoidGeometry g03(0.3);
    CHECK(std::abs(g03.clifford_radius() - 2.099233554132057) <= 1e-8);
    const EllipsoidGeometry g5(5.0);
    CHECK(std::abs(g5.clifford_radius() - 20.280201613158948) <= 1e-8);
    // The oracle itself agrees with the frozen numbers (guards against a
    // transcription slip in either).
    CHECK(std::abs(arclength_oracle(2.0, kPi / 2.0) - 10.739217663941870) <=
          1e-9);
    CHECK(std::abs(arclength_oracle(0.5, kPi / 4.0) - 2.691868893685203) <=
          1e-9);
}

TEST_CASE("round sphere closed forms") {
    const EllipsoidGeometry g(1.0);
    CHECK(std::abs(g.disk_radius() - 2.0 * kPi) <= 1e-10);
    CHECK(std::abs(g.clifford_radius() - kPi * std::sqrt(2.0)) <= 1e-10);
    for (int i = 0; i <= 64; ++i) {
        const double phi = (kPi / 2.0) * i / 64.0;
        CHECK(std::abs(g.radius(phi) - 2.0 * kPi * std::sin(phi)) <= 1e-10);
    }
    for (int i = 1; i < 64; ++i) {
        const double rho = 2.0 * kPi * i / 64.0;
        const double want = rho * std::sqrt(1.0 - rho * rho /
                                                      (4.0 * kPi * kPi));
        CHECK(std::abs(g.profile(rho) - want) <= 1e-10);
        CHECK(std::abs(g.latitude(rho) - std::asin(rho / (2.0 * kPi))) <=
              1e-10);
    }
}

TEST_CASE("profile values at the equatorial circle") {
    for (double a : {0.3, 0.5, 1.0, 2.0, 5.0}) {
        const EllipsoidGeometry g(a);
        const double rc = g.clifford_radius();
        CHECK(rc > 0.0);
        CHECK(rc < g.disk_radius());
        CHECK(std::abs(g.latitude(rc) - kPi / 4.0) <= 1e-10);
        CHECK(std::abs(g.profile(rc) - kPi * a) <= 1e-9);
        const ProfileDerivatives d = g.profile_derivs(rc);
        CHECK(std::abs(d.first) <= 1e-9);
        CHECK(std::abs(d.second + 4.0 * a / (kPi * (a * a + 1.0))) <= 1e-9);
    }
}

TEST_CASE("latitude chart round-trips and is monotone") {
    const EllipsoidGeometry g(0.7);
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double phi = (kPi / 2.0) * i / 100.0;
        const double rho = g.radius(phi);
        CHECK(rho > prev);
        prev = rho;
        CHECK(std::abs(g.latitude(rho) - phi) <= 1e-10);
    }
    for (int i = 0; i <= 100; ++i) {
        const double rho = g.disk_radius() * i / 100.0;
        CHECK(std::abs(g.radius(g.latitude(rho)) - rho) <= 1e-9);
    }
}

TEST_CASE("profile equals pi a sin(2 latitude)") {
    const EllipsoidGeometry g(2.0);
    for (int i = 1; i < 50; ++i) {
        const double rho = g.disk_radius() * i / 50.0;
        const double phi = g.latitude(rho);
        CHECK(std::abs(g.profile(rho) - kPi * 2.0 * std::sin(2.0 * phi)) <=
              1e-10);
    }
}

TEST_CASE("profile derivatives agree with finite differences") {
    for (double a : {0.6, 1.7}) {
        const EllipsoidGeometry g(a);
        const double L = g.disk_radius();
        const double h = 1e-6;
        for (int i = 2; i <= 48; ++i) {
            const double rho = L * i / 50.0;
            const ProfileDerivatives d = g.profile_derivs(rho);
            const double fd1 = (g.profile(rho + h) - g.profile(rho - h)) /
                               (2.0 * h);
            if (std::abs(d.first) > 1e-2) {
                INFO("a=" << a << " rho=" << rho);
                CHECK(std::abs(fd1 - d.first) <=
                      1e-5 * std::max(1.0, std::abs(d.first)));
            }
            const double fd2 = (g.profile_derivs(rho + h).first -
                                g.profile_derivs(rho - h).first) /
                               (2.0 * h);
            CHECK(std::abs(fd2 - d.second) <=
                  1e-4 * std::max(1.0, std::abs(d.second)));
        }
    }
}

TEST_CASE("profile_jet matches profile and profile_derivs") {
    const EllipsoidGeometry g(1.4);
    const double L = g.disk_radius();
    for (int i = 0; i <= 40; ++i) {
        const double rho = 0.99 * L * i / 40.0;
        const ProfileJet jet = g.profile_jet(rho);
        CHECK(std::abs(jet.value - g.profile(rho)) <= 1e-12);
        CHECK(std::abs(jet.slope - g.profile_derivs(rho).first) <= 1e-12);
    }
    // At the center the profile vanishes with unit slope, and the
    // curvature of the profile vanishes too (smooth pole).
    CHECK(g.profile(0.0) == 0.0);
    CHECK(std::abs(g.profile_jet(0.0).slope - 1.0) <= 1e-12);
    CHECK(std::abs(g.profile_derivs(0.0).first - 1.0) <= 1e-12);
    CHECK(std::abs(g.profile_derivs(0.0).second) <= 1e-12);
}

TEST_CASE("domain checks and the singular boundary guard") {
    CHECK_THROWS_AS(EllipsoidGeometry(0.0), std::invalid_argument);
    CHECK_THROWS_AS(EllipsoidGeometry(-2.0), std::invalid_argument);
    CHECK_THROWS_AS(EllipsoidGeometry(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(EllipsoidGeometry(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(EllipsoidGeometry(1.0, 0.5), std::invalid_argument);

    const EllipsoidGeometry g(0.9);
    const double L = g.disk_radius();
    CHECK_THROWS_AS(g.radius(-0.1), std::domain_error);
    CHECK_THROWS_AS(g.radius(kPi / 2.0 + 0.1), std::domain_error);
    CHECK_THROWS_AS(g.latitude(-0.1), std::domain_error);
    CHECK_THROWS_AS(g.latitude(L + 0.1), std::domain_error);
    // The profile slope blows up like 1/cos φ at the rim: inside the
    // guard band the jet and derivatives refuse instead of degrading.
    CHECK_THROWS_AS(g.profile_jet(L), SingularBoundaryError);
    CHECK_THROWS_AS(g.profile_derivs(L * (1.0 - 1e-9)),
                    SingularBoundaryError);
    CHECK_NOTHROW(g.profile_jet(L * (1.0 - 1e-5)));
    CHECK_NOTHROW(g.profile(L)); // the value itself is finite (zero)
    CHECK(std::abs(g.profile(L)) <= 1e-9);
}

TEST_CASE("launch radius parametrization") {
    const EllipsoidGeometry g(2.0);
    CHECK(std::abs(g.start_radius(0.0) - g.clifford_radius()) <= 1e-12);
    CHECK(std::abs(g.start_radius(-0.5) - 4.719399707405993) <= 1e-8);
    CHECK(g.start_radius(0.999) < g.disk_radius());
    CHECK(g.start_radius(-0.999) > 0.0);
    CHECK_THROWS_AS(g.start_radius(1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.start_radius(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.start_radius(1.7), std::invalid_argument);

    for (double s : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
        CHECK(std::abs(g.start_param(g.start_radius(s)) - s) <= 1e-10);
    }

    // Slope of the launch radius at s = 0: finite differences against
    // the analytic chain-rule value, and both against π²√(a²+1)/4.
    const double h = 1e-6;
    const double fd =
        (g.start_radius(h) - g.start_radius(-h)) / (2.0 * h);
    CHECK(std::abs(fd - g.start_radius_slope0()) <=
          1e-6 * g.start_radius_slope0());
    CHECK(std::abs(g.start_radius_slope0() -
                   kPi * kPi * std::sqrt(5.0) / 4.0) <= 1e-10);
}
