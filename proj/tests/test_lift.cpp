// Tests for lifting closed geodesics to tori: vertex layout, ellipsoid
// residuals, area identities, mesh convergence, and the embedding check.

#include <array>
#include <cmath>
#include <vector>
#include <catch2/catch_amalgamated.hpp>

#include "geotori/bifurcation.hpp"
#include "geotori/geodesic_flow.hpp"
#include "geotori/lift.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/shooting.hpp"

using namespace geotori;

namespace {

// The nontrivial simple closed geodesic at a = 1/2 (bracketed by the sign
// change of f_1 between s = 0.4 and 0.6).
ClosedGeodesicRoot fundamental_root(const EllipsoidGeometry& g) {
    const ClosedGeodesicRoot root = find_closed_geodesic(g, 1, 0.4, 0.6);
    REQUIRE(root.converged);
    return root;
}

} // namespace

TEST_CASE("equatorial lift is the flat torus") {
    const EllipsoidGeometry g(2.0);
    const Trajectory tr = integrate_closed(g, 0.0, 1);
    const TorusMesh mesh = lift(g, tr, 0, 16);
    CHECK(mesh.n_t == 512); // default resolution for one half-turn pair
    CHECK(mesh.n_psi == 16);
    CHECK(std::abs(mesh.ell - kPi) <= 1e-10);
    REQUIRE(mesh.vertices.size() == std::size_t(512) * 16);
    REQUIRE(mesh.quads.size() == std::size_t(512) * 16);

    CHECK(mesh.max_residual <= 1e-10);
    CHECK(mesh.closure_error <= 1e-8);
    for (const auto& v : mesh.vertices) {
        const double z2 = (v[0] * v[0] + v[1] * v[1]) / 4.0;
        const double w2 = v[2] * v[2] + v[3] * v[3];
        CHECK(std::abs(z2 - 0.5) <= 1e-10);
        CHECK(std::abs(w2 - 0.5) <= 1e-10);
    }
    for (const auto& q : mesh.quads)
        for (int c : q) {
            CHECK(c >= 0);
            CHECK(c < int(mesh.vertices.size()));
        }

    // Area of the square torus of radii (a/√2, 1/√2): both by quadrature
    // of the induced metric and by the flat mesh.  The triangulated grid
    // of a product of circles is exactly the product of the two inscribed
    // polygon perimeters (the chords of the two factors are orthogonal).
    const double area = torus_area(g, tr);
    CHECK(std::abs(area - 4.0 * kPi * kPi) <= 1e-9);
    const double per_z = 2.0 * 512 * std::sqrt(2.0) * std::sin(kPi / 512);
    const double per_w = 2.0 * 16 / std::sqrt(2.0) * std::sin(kPi / 16);
    CHECK(std::abs(mesh_area(mesh) - per_z * per_w) <= 1e-8 * area);
}

TEST_CASE("k-fold equatorial cover multiplies the area") {
    const EllipsoidGeometry g(0.8);
    const Trajectory tr = integrate_closed(g, 0.0, 3);
    const double area = torus_area(g, tr);
    CHECK(std::abs(area - 3.0 * 2.0 * kPi * kPi * 0.8) <= 1e-8);
}

TEST_CASE("mesh area converges quadratically to the quadrature area") {
    const EllipsoidGeometry g(0.5);
    const ClosedGeodesicRoot root = fundamental_root(g);
    const Trajectory tr = integrate_closed(g, root.result.s, 1);
    const double area = torus_area(g, tr);
    CHECK(area > 0.0);

    const double err_coarse =
        std::abs(mesh_area(lift(g, tr, 128, 32)) - area);
    const double err_fine =
        std::abs(mesh_area(lift(g, tr, 256, 64)) - area);
    CHECK(err_fine < err_coarse);
    // Halving h shrinks the flat-mesh deficit by ~4 (second order).
    CHECK(err_coarse / err_fine >= 2.5);
    CHECK(err_coarse / err_fine <= 6.0);

    // Default resolution is already inside half a percent.
    const TorusMesh dflt = lift(g, tr);
    CHECK(std::abs(mesh_area(dflt) - area) / area <= 5e-3);
    CHECK(dflt.max_residual <= 1e-10);
    CHECK(dflt.closure_error <= 1e-8);
}

TEST_CASE("vertices reproduce the quotient geodesic and the psi circle") {
    const EllipsoidGeometry g(0.5);
    const ClosedGeodesicRoot root = fundamental_root(g);
    const Trajectory tr = integrate_closed(g, root.result.s, 1);
    const int n_t = 64, n_psi = 16;
    const TorusMesh mesh = lift(g, tr, n_t, n_psi);
    const double ell = mesh.ell;

    for (int i : {0, 7, n_t / 2, n_t - 1}) {
        const double t = -ell + 2.0 * ell * i / n_t;
        const GeodesicState st = tr.state(t);
        const double phi = g.latitude(st.rho);
        for (int p : {0, 3, n_psi - 1}) {
            const double psi = 2.0 * kPi * p / n_psi;
            const std::array<double, 4> want{
                g.a() * std::sin(phi) * std::cos(st.theta),
                g.a() * std::sin(phi) * std::sin(st.theta),
                std::cos(phi) * std::cos(psi),
                std::cos(phi) * std::sin(psi)};
            const auto& got = mesh.vertices[std::size_t(i) * n_psi + p];
            for (int c = 0; c < 4; ++c)
                CHECK(std::abs(got[c] - want[c]) <= 1e-12);
        }
    }

    // Rotating the w-plane by one psi step permutes the vertex columns.
    const double d = 2.0 * kPi / n_psi;
    const double cd = std::cos(d), sd = std::sin(d);
    for (int i : {0, 5, n_t - 1})
        for (int p = 0; p < n_psi; ++p) {
            const auto& v = mesh.vertices[std::size_t(i) * n_psi + p];
            const auto& w =
                mesh.vertices[std::size_t(i) * n_psi + (p + 1) % n_psi];
            CHECK(std::abs(w[0] - v[0]) <= 1e-12);
            CHECK(std::abs(w[1] - v[1]) <= 1e-12);
            CHECK(std::abs(w[2] - (v[2] * cd - v[3] * sd)) <= 1e-12);
            CHECK(std::abs(w[3] - (v[2] * sd + v[3] * cd)) <= 1e-12);
        }
}

TEST_CASE("embedding check: the fundamental geodesic is simple") {
    const EllipsoidGeometry g(0.5);
    const ClosedGeodesicRoot root = fundamental_root(g);
    const Trajectory tr = integrate_closed(g, root.result.s, 1);
    const EmbeddingReport rep = embedding_check(g, tr);
    CHECK(rep.embedded);
    CHECK(rep.crossings.empty());
}

TEST_CASE("embedding check: the (1,2) geodesic crosses itself once") {
    const EllipsoidGeometry g(0.24); // below a_{1,2} ~ 0.258
    // Bracket the nontrivial root of f_2 by a coarse scan in s.
    double lo = 0.0, hi = 0.0;
    double prev_s = 0.05;
    double prev_f = shooting_value(g, prev_s, 2).f;
    for (int i = 1; i <= 120; ++i) {
        const double s = 0.05 + (0.9 - 0.05) * i / 120.0;
        const double f = shooting_value(g, s, 2).f;
        if (prev_f * f < 0.0) {
            lo = prev_s;
            hi = s;
            break;
        }
        prev_s = s;
        prev_f = f;
    }
    REQUIRE(lo < hi);
    const ClosedGeodesicRoot root = find_closed_geodesic(g, 2, lo, hi);
    REQUIRE(root.converged);

    const Trajectory tr = integrate_closed(g, root.result.s, 2);
    const EmbeddingReport rep = embedding_check(g, tr);
    CHECK(!rep.embedded);
    REQUIRE(rep.crossings.size() == 1);
    // The single crossing sits on the symmetry diameter.
    CHECK(std::abs(rep.crossings[0].y) <= 1e-8);
    CHECK(rep.crossings[0].t1 < rep.crossings[0].t2);
}

TEST_CASE("embedding check: a (2,3) geodesic has two axis pairs") {
    // Walk a few steps out along the (2,3) branch and lift its endpoint.
    ContinuationConfig cfg;
    cfg.ds0 = 1e-3;
    cfg.ds_max = 5e-3;
    cfg.max_points = 10;
    const Branch br = trace_branch(2, 3, +1, cfg);
    REQUIRE(!br.points.empty());
    const BranchPoint& p = br.points.back();

    const EllipsoidGeometry g(p.a);
    const Trajectory tr = integrate_closed(g, p.s, 3);
    const EmbeddingReport rep = embedding_check(g, tr);
    CHECK(!rep.embedded);
    // Near the instant the curve is a 3-fold circle with a j = 2 ripple:
    // j (k − 1) = 4 transverse crossings, split between the symmetry
    // diameter (y = 0) and the perpendicular axis (x = 0).
    REQUIRE(rep.crossings.size() == 4);
    int on_diameter = 0, on_vertical = 0;
    for (const PlanarCrossing& c : rep.crossings) {
        if (std::abs(c.y) <= 1e-6) ++on_diameter;
        if (std::abs(c.x) <= 1e-6) ++on_vertical;
    }
    CHECK(on_diameter == 2);
    CHECK(on_vertical == 2);
}

TEST_CASE("lift rejects open or unclosed trajectories and tiny grids") {
    const EllipsoidGeometry g(0.5);
    // Forward-only run: no -k crossing, not a full period.
    const Trajectory open = integrate(g, 0.3, 1);
    CHECK_THROWS_AS(lift(g, open), std::invalid_argument);
    CHECK_THROWS_AS(torus_area(g, open), std::invalid_argument);
    CHECK_THROWS_AS(embedding_check(g, open), std::invalid_argument);

    // Full period but rho_dot does not vanish at the k-th crossing.
    const Trajectory unclosed = integrate_closed(g, 0.3, 1);
    CHECK_THROWS_AS(lift(g, unclosed), std::invalid_argument);

    const ClosedGeodesicRoot root = fundamental_root(g);
    const Trajectory tr = integrate_closed(g, root.result.s, 1);
    CHECK_THROWS_AS(lift(g, tr, 2, 16), std::invalid_argument);
    CHECK_THROWS_AS(lift(g, tr, 16, 2), std::invalid_argument);
}
