// Tests for the geodesic integrator on the reduced disk: launch family,
// crossing events, first integrals, and an independent symplectic oracle.

#include <cmath>
#include <catch2/catch_amalgamated.hpp>

#include "geotori/errors.hpp"
#include "geotori/geodesic_flow.hpp"
#include "geotori/metric_profile.hpp"

using namespace geotori;

TEST_CASE("equatorial launch is the circular geodesic") {
    const EllipsoidGeometry g(0.7);
    const double rc = g.clifford_radius();
    const Trajectory tr = integrate(g, 0.0, 3);
    for (int i = 0; i <= 100; ++i) {
        const double t = tr.t_max() * i / 100.0;
        const GeodesicState st = tr.state(t);
        CHECK(std::abs(st.rho - rc) <= 1e-10);
        // Unit angular speed on the equator: θ(t) = t.
        CHECK(std::abs(st.theta - t) <= 1e-10);
    }
    REQUIRE(tr.crossings().size() == 3);
    for (int m = 1; m <= 3; ++m) {
        const CrossingEvent& ev = tr.crossing(m);
        CHECK(std::abs(ev.t - m * kPi) <= 1e-10);
        CHECK(std::abs(ev.state.rho_dot) <= 1e-10);
    }
}

TEST_CASE("first integrals are conserved to integrator accuracy") {
    for (auto [a, s] : {std::pair{0.5, 0.3}, {2.0, -0.6}}) {
        const EllipsoidGeometry g(a);
        const Trajectory tr = integrate(g, s, 2);
        INFO("a=" << a << " s=" << s);
        CHECK(tr.max_clairaut_drift() <= 1e-9);
        CHECK(tr.max_energy_drift() <= 1e-9);
        // Recomputing the integrals from dense states agrees too; the
        // interpolant between accepted steps is roughly one order looser
        // than the steps themselves.
        for (int i = 0; i <= 50; ++i) {
            const double t = tr.t_max() * i / 50.0;
            const GeodesicState st = tr.state(t);
            CHECK(std::abs(clairaut(g, st) - tr.clairaut0()) <=
                  1e-8 * tr.clairaut0());
            CHECK(std::abs(energy(g, st) - tr.energy0()) <=
                  1e-8 * tr.energy0());
        }
    }
}

// Independent oracle: after eliminating θ with the angular-momentum
// integral c = θ̇ varphi², the radial motion is a one-dimensional
// conservative system ρ̈ = c² varphi′/varphi³.  Velocity Verlet at a
// tiny fixed step is a completely different discretization; agreement
// pins down both the equations and the adaptive integrator.
TEST_CASE("velocity-Verlet cross-check of the radial dynamics") {
    const EllipsoidGeometry g(0.5);
    const double s = 0.3;
    const Trajectory tr = integrate(g, s, 1);

    const double rho0 = g.start_radius(s);
    const double c = g.profile(rho0) * g.profile(rho0); // θ̇(0) = 1
    auto force = [&](double rho) {
        const ProfileJet p = g.profile_jet(rho);
        return c * c * p.slope / (p.value * p.value * p.value);
    };

    const int n = 100000;
    const double dt = 1.0 / n;
    double rho = rho0, v = 0.0, theta = 0.0;
    double f_prev = force(rho);
    for (int i = 0; i < n; ++i) {
        const double td_old = c / (g.profile(rho) * g.profile(rho));
        rho += v * dt + 0.5 * f_prev * dt * dt;
        const double f_new = force(rho);
        v += 0.5 * (f_prev + f_new) * dt;
        f_prev = f_new;
        const double td_new = c / (g.profile(rho) * g.profile(rho));
        theta += 0.5 * (td_old + td_new) * dt; // trapezoid on θ̇ = c/varphi²
    }

    const GeodesicState st = tr.state(1.0);
    CHECK(std::abs(st.rho - rho) <= 1e-8);
    CHECK(std::abs(st.rho_dot - v) <= 1e-8);
    CHECK(std::abs(st.theta - theta) <= 1e-7);
    // The dense output's θ̇ is consistent with the Clairaut relation.
    CHECK(std::abs(st.theta_dot -
                   c / (g.profile(st.rho) * g.profile(st.rho))) <= 1e-9);
}

TEST_CASE("closed-interval integration is reflection symmetric") {
    const EllipsoidGeometry g(0.5);
    const Trajectory tr = integrate_closed(g, 0.3, 1);
    CHECK(tr.t_min() < 0.0);
    CHECK(tr.t_max() > 0.0);
    CHECK(std::abs(tr.t_min() + tr.t_max()) <= 1e-9);
    for (int i = 1; i <= 20; ++i) {
        const double t = tr.t_max() * i / 20.0 * 0.999;
        const GeodesicState fwd = tr.state(t);
        const GeodesicState bwd = tr.state(-t);
        CHECK(std::abs(fwd.rho - bwd.rho) <= 1e-9);
        CHECK(std::abs(fwd.theta + bwd.theta) <= 1e-9);
        CHECK(std::abs(fwd.rho_dot + bwd.rho_dot) <= 1e-9);
        CHECK(std::abs(fwd.theta_dot - bwd.theta_dot) <= 1e-9);
    }
    // Negative crossings mirror the positive ones.
    CHECK(std::abs(tr.crossing(-1).t + tr.crossing(1).t) <= 1e-9);
}

TEST_CASE("crossing events sit exactly on the diameter") {
    const EllipsoidGeometry g(1.3);
    const Trajectory tr = integrate(g, -0.45, 4);
    REQUIRE(tr.crossings().size() == 4);
    double prev_t = 0.0;
    for (int m = 1; m <= 4; ++m) {
        const CrossingEvent& ev = tr.crossing(m);
        CHECK(ev.t > prev_t);
        prev_t = ev.t;
        CHECK(std::abs(ev.state.theta - m * kPi) <= 1e-12);
        // The dense output at the event time agrees with the event state.
        const GeodesicState st = tr.state(ev.t);
        CHECK(std::abs(st.theta - ev.state.theta) <= 1e-12);
        CHECK(std::abs(st.rho - ev.state.rho) <= 1e-12);
    }
}

TEST_CASE("crossing times: trivial launch and frozen reference") {
    const EllipsoidGeometry g09(0.9);
    for (int k = 1; k <= 4; ++k)
        CHECK(std::abs(crossing_time(g09, 0.0, k) - k * kPi) <= 1e-10);
    const EllipsoidGeometry g05(0.5);
    CHECK(std::abs(crossing_time(g05, 0.3, 1) - 3.562837216967) <= 1e-9);
}

TEST_CASE("theta advances monotonically") {
    const EllipsoidGeometry g(0.5);
    const Trajectory tr = integrate(g, 0.7, 1);
    for (int i = 0; i <= 200; ++i) {
        const double t = tr.t_max() * i / 200.0;
        CHECK(tr.state(t).theta_dot > 0.0);
    }
}

TEST_CASE("time-clamped integration in both directions") {
    const EllipsoidGeometry g(0.8);
    const Trajectory fwd = integrate_time(g, 0.2, 5.0);
    CHECK(fwd.t_min() == 0.0);
    CHECK(std::abs(fwd.t_max() - 5.0) <= 1e-12);
    const Trajectory bwd = integrate_time(g, 0.2, -5.0);
    CHECK(std::abs(bwd.t_min() + 5.0) <= 1e-12);
    CHECK(bwd.t_max() == 0.0);
    // Reflection symmetry of the launch family links the two runs.
    CHECK(std::abs(fwd.state(3.0).rho - bwd.state(-3.0).rho) <= 1e-9);
}

TEST_CASE("launch and domain errors") {
    const EllipsoidGeometry g(1.0);
    CHECK_THROWS_AS(integrate(g, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(integrate(g, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(integrate(g, 0.2, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_time(g, 0.2, 0.0), std::invalid_argument);

    IntegratorConfig starved;
    starved.max_steps = 3;
    CHECK_THROWS_AS(integrate(g, 0.2, 2, starved), IntegrationError);

    const Trajectory tr = integrate(g, 0.2, 1);
    CHECK_THROWS_AS(tr.state(tr.t_max() + 1.0), std::domain_error);
    CHECK_THROWS_AS(tr.state(-1.0), std::domain_error);
    CHECK_THROWS_AS(tr.crossing(99), std::out_of_range);
}
