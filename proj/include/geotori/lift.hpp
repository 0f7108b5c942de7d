// lift.hpp: from closed geodesics of the disk metric back to immersed
// tori in the ellipsoid.
//
// A geodesic t ↦ (ρ(t), θ(t)) lifts to the equivariant immersion
//
//     X(t, ψ) = ( a sin φ(ρ(t)) e^{iθ(t)},  cos φ(ρ(t)) e^{iψ} ) ∈ ℂ²,
//
// which lands on the ellipsoid |z|²/a² + |w|² = 1 identically in the
// latitude chart.  When the geodesic closes over one period [−ℓ_k, ℓ_k]
// the image is an immersed torus whose induced area equals the geodesic
// length (the ψ-circle exactly compensates the conformal factor):
//
//     √det G = √E / 2π,   area = 2π ∫ √det G dψ… = 2 ℓ_k √E.
//
// torus_area() nevertheless integrates the honest first fundamental form
// of the lift, so the identity above is something tests can check, not an
// assumption baked in.  embedding_check() decides embeddedness where it
// can genuinely fail: in the disk, by locating transverse self-crossings
// of the planar curve (the ψ-circle never self-intersects).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotori/geodesic_flow.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/quadrature.hpp"

namespace geotori {

struct TorusMesh {
    double a = 0.0, s = 0.0;
    int k = 0;            // half-turn count of the underlying geodesic
    int n_t = 0, n_psi = 0;
    double ell = 0.0;     // half period ℓ_k
    // Vertex (i, p) = X(t_i, ψ_p), t_i = −ℓ + 2ℓ i/n_t, ψ_p = 2π p/n_psi,
    // row-major index i * n_psi + p; both directions wrap.
    std::vector<std::array<double, 4>> vertices; // (Re z, Im z, Re w, Im w)
    std::vector<std::array<int, 4>> quads;
    double max_residual = 0.0;  // max | |z|²/a² + |w|² − 1 | over vertices
    double closure_error = 0.0; // |X(ℓ, ·) − X(−ℓ, ·)| (t-direction seam)
};

namespace detail {

// The trajectory must cover one full closed period: crossings ±k present
// and the curve actually closing there.
inline int closed_winding(const Trajectory& tr, double closed_tol,
                          const char* who) {
    int k = 0;
    for (const auto& e : tr.crossings()) k = std::max(k, e.m);
    if (k < 1 || !tr.has_crossing(-k))
        throw std::invalid_argument(
            std::string(who) +
            ": trajectory must cover [-ell_k, ell_k] (use integrate_closed)");
    const double f = tr.crossing(k).state.rho_dot;
    if (!(std::abs(f) <= closed_tol))
        throw std::invalid_argument(
            std::string(who) + ": trajectory is not closed (|rho_dot| = " +
            std::to_string(std::abs(f)) + " at the k-th crossing)");
    return k;
}

} // namespace detail

// Sample the lifted torus on an n_t × n_psi grid over one full period.
// n_t = 0 picks the default 512 per half-turn.
inline TorusMesh lift(const EllipsoidGeometry& g, const Trajectory& tr,
                      int n_t = 0, int n_psi = 128,
                      double closed_tol = 1e-8) {
    const int k = detail::closed_winding(tr, closed_tol, "lift");
    if (n_t == 0) n_t = 512 * k;
    if (n_t < 3 || n_psi < 3)
        throw std::invalid_argument("lift: grid must be at least 3 x 3");

    TorusMesh mesh;
    mesh.a = g.a();
    mesh.s = tr.s();
    mesh.k = k;
    mesh.n_t = n_t;
    mesh.n_psi = n_psi;
    mesh.ell = tr.crossing(k).t;

    const double t_lo = tr.crossing(-k).t;
    mesh.vertices.reserve(std::size_t(n_t) * n_psi);
    std::vector<double> cos_psi(n_psi), sin_psi(n_psi);
    for (int p = 0; p < n_psi; ++p) {
        cos_psi[p] = std::cos(2.0 * kPi * p / n_psi);
        sin_psi[p] = std::sin(2.0 * kPi * p / n_psi);
    }
    for (int i = 0; i < n_t; ++i) {
        // March t over [−ℓ, ℓ); the i = n_t row is identified with i = 0.
        const double u = double(i) / n_t;
        const double t = t_lo + (mesh.ell - t_lo) * u;
        const GeodesicState st = tr.state(t);
        const double phi = g.latitude(st.rho);
        const double zr = g.a() * std::sin(phi);
        const double wr = std::cos(phi);
        const double ct = std::cos(st.theta), stt = std::sin(st.theta);
        for (int p = 0; p < n_psi; ++p) {
            mesh.vertices.push_back({zr * ct, zr * stt, wr * cos_psi[p],
                                     wr * sin_psi[p]});
            const auto& v = mesh.vertices.back();
            const double res = (v[0] * v[0] + v[1] * v[1]) /
                                   (g.a() * g.a()) +
                               v[2] * v[2] + v[3] * v[3] - 1.0;
            mesh.max_residual = std::max(mesh.max_residual, std::abs(res));
        }
    }
    mesh.quads.reserve(std::size_t(n_t) * n_psi);
    for (int i = 0; i < n_t; ++i)
        for (int p = 0; p < n_psi; ++p) {
            const int i1 = (i + 1) % n_t, p1 = (p + 1) % n_psi;
            mesh.quads.push_back({i * n_psi + p, i1 * n_psi + p,
                                  i1 * n_psi + p1, i * n_psi + p1});
        }

    // Seam misfit: compare X at the two period endpoints directly (the
    // grid stores only the −ℓ row; +ℓ is reached by wrapping).
    {
        const GeodesicState lo = tr.state(t_lo);
        const GeodesicState hi = tr.state(mesh.ell);
        const double phi_lo = g.latitude(lo.rho);
        const double phi_hi = g.latitude(hi.rho);
        const double zr_lo = g.a() * std::sin(phi_lo);
        const double zr_hi = g.a() * std::sin(phi_hi);
        const double dx = zr_hi * std::cos(hi.theta) -
                          zr_lo * std::cos(lo.theta);
        const double dy = zr_hi * std::sin(hi.theta) -
                          zr_lo * std::sin(lo.theta);
        const double dw = std::cos(phi_hi) - std::cos(phi_lo);
        mesh.closure_error = std::sqrt(dx * dx + dy * dy + dw * dw);
    }
    return mesh;
}

// Area of the lifted torus by quadrature of the induced area element
//
//     √det G (t) = cos φ √( a² cos²φ φ'² ρ̇² + a² sin²φ θ̇² + sin²φ φ'² ρ̇² )
//
// integrated over t ∈ [−ℓ, ℓ] and the full ψ-circle (factor 2π).
inline double torus_area(const EllipsoidGeometry& g, const Trajectory& tr,
                         double quad_tol = 1e-11,
                         double closed_tol = 1e-8) {
    const int k = detail::closed_winding(tr, closed_tol, "torus_area");
    const double ell = tr.crossing(k).t;
    const double t_lo = tr.crossing(-k).t;
    auto density = [&](double t) {
        const GeodesicState st = tr.state(t);
        const double phi = g.latitude(st.rho);
        const double sp = std::sin(phi), cp = std::cos(phi);
        const double dphi = 1.0 / g.radius_deriv(phi); // dφ/dρ
        const double a = g.a();
        const double rd2 = st.rho_dot * st.rho_dot;
        const double td2 = st.theta_dot * st.theta_dot;
        return cp * std::sqrt(a * a * cp * cp * dphi * dphi * rd2 +
                              a * a * sp * sp * td2 + sp * sp * dphi * dphi *
                                                          rd2);
    };
    return 2.0 * kPi * adaptive_simpson(density, t_lo, ell, quad_tol);
}

// Flat (triangulated) area of the sampled mesh; second-order consistent
// with torus_area as the grid refines.
inline double mesh_area(const TorusMesh& mesh) {
    auto tri = [&](int v0, int v1, int v2) {
        std::array<double, 4> u, v;
        for (int c = 0; c < 4; ++c) {
            u[c] = mesh.vertices[v1][c] - mesh.vertices[v0][c];
            v[c] = mesh.vertices[v2][c] - mesh.vertices[v0][c];
        }
        double uu = 0, vv = 0, uv = 0;
        for (int c = 0; c < 4; ++c) {
            uu += u[c] * u[c];
            vv += v[c] * v[c];
            uv += u[c] * v[c];
        }
        return 0.5 * std::sqrt(std::max(0.0, uu * vv - uv * uv));
    };
    double area = 0.0;
    for (const auto& q : mesh.quads)
        area += tri(q[0], q[1], q[2]) + tri(q[0], q[2], q[3]);
    return area;
}

struct PlanarCrossing {
    double t1, t2; // parameter values of the two passes (t1 < t2)
    double x, y;   // meeting point in the disk chart
};

struct EmbeddingReport {
    bool embedded = false;
    std::vector<PlanarCrossing> crossings;
};

namespace detail {

struct PlanarPoint {
    double x, y;
};

inline PlanarPoint planar(const GeodesicState& st) {
    return {st.rho * std::cos(st.theta), st.rho * std::sin(st.theta)};
}

// γ and γ' in the disk chart from the dense state.
inline void planar_jet(const GeodesicState& st, double out_p[2],
                       double out_v[2]) {
    const double c = std::cos(st.theta), s = std::sin(st.theta);
    out_p[0] = st.rho * c;
    out_p[1] = st.rho * s;
    out_v[0] = st.rho_dot * c - st.rho * st.theta_dot * s;
    out_v[1] = st.rho_dot * s + st.rho * st.theta_dot * c;
}

} // namespace detail

// Transverse self-crossings of the closed geodesic as a curve in the
// disk.  Coarse polyline sweep (adjacent-modulo-wrap pairs excluded),
// then 2×2 Newton on γ(t1) = γ(t2) against the dense output, then
// deduplication.  The lifted torus is embedded iff none remain.
inline EmbeddingReport embedding_check(const EllipsoidGeometry& g,
                                       const Trajectory& tr,
                                       int coarse_samples = 4096,
                                       double closed_tol = 1e-8) {
    const int k = detail::closed_winding(tr, closed_tol, "embedding_check");
    (void)g;
    const double ell = tr.crossing(k).t;
    const double t_lo = tr.crossing(-k).t;
    const double period = ell - t_lo;
    const int n = std::max(coarse_samples, 64);

    std::vector<double> ts(n + 1);
    std::vector<detail::PlanarPoint> pts(n + 1);
    for (int i = 0; i <= n; ++i) {
        ts[i] = t_lo + period * i / n;
        pts[i] = detail::planar(tr.state(ts[i]));
    }

    // Candidate segment pairs by bounding-box overlap.
    struct Candidate {
        double t1, t2;
    };
    std::vector<Candidate> cand;
    const double slack = 1e-12;
    for (int i = 0; i < n; ++i) {
        for (int l = i + 2; l < n; ++l) {
            if (i == 0 && l == n - 1) continue; // wrap-adjacent
            const double ax0 = std::min(pts[i].x, pts[i + 1].x) - slack;
            const double ax1 = std::max(pts[i].x, pts[i + 1].x) + slack;
            const double ay0 = std::min(pts[i].y, pts[i + 1].y) - slack;
            const double ay1 = std::max(pts[i].y, pts[i + 1].y) + slack;
            if (std::max(pts[l].x, pts[l + 1].x) < ax0 ||
                std::min(pts[l].x, pts[l + 1].x) > ax1 ||
                std::max(pts[l].y, pts[l + 1].y) < ay0 ||
                std::min(pts[l].y, pts[l + 1].y) > ay1)
                continue;
            // Exact segment-crossing test on the polyline.
            auto orient = [](const detail::PlanarPoint& p,
                             const detail::PlanarPoint& q,
                             const detail::PlanarPoint& r) {
                return (q.x - p.x) * (r.y - p.y) -
                       (q.y - p.y) * (r.x - p.x);
            };
            const double o1 = orient(pts[i], pts[i + 1], pts[l]);
            const double o2 = orient(pts[i], pts[i + 1], pts[l + 1]);
            const double o3 = orient(pts[l], pts[l + 1], pts[i]);
            const double o4 = orient(pts[l], pts[l + 1], pts[i + 1]);
            if (o1 * o2 > 0.0 || o3 * o4 > 0.0) continue;
            // Linear parameter of the crossing on segment i.
            const double denom = o1 - o2;
            const double u = (std::abs(denom) > 0.0) ? o1 / denom : 0.5;
            const double v =
                (std::abs(o3 - o4) > 0.0) ? o3 / (o3 - o4) : 0.5;
            cand.push_back({ts[i] + (ts[i + 1] - ts[i]) * u,
                            ts[l] + (ts[l + 1] - ts[l]) * v});
        }
    }

    EmbeddingReport rep;
    for (const Candidate& c0 : cand) {
        double t1 = c0.t1, t2 = c0.t2;
        bool okc = false;
        for (int it = 0; it < 60; ++it) {
            double p1[2], v1[2], p2[2], v2[2];
            detail::planar_jet(tr.state(t1), p1, v1);
            detail::planar_jet(tr.state(t2), p2, v2);
            const double fx = p1[0] - p2[0], fy = p1[1] - p2[1];
            if (std::abs(fx) + std::abs(fy) <= 1e-12) {
                okc = true;
                break;
            }
            // J = [v1, -v2]
            const double det = v1[0] * (-v2[1]) - (-v2[0]) * v1[1];
            if (std::abs(det) < 1e-14) break;
            const double d1 = (-fx * (-v2[1]) + (-v2[0]) * fy) / det;
            const double d2 = (-v1[0] * fy + fx * v1[1]) / det;
            t1 += d1;
            t2 += d2;
            if (t1 < t_lo || t1 > ell || t2 < t_lo || t2 > ell) break;
        }
        if (!okc) continue;
        if (t2 < t1) std::swap(t1, t2);
        // Reject the trivial solutions: same pass, or the period seam.
        if (t2 - t1 < 1e-3 * period) continue;
        if (t2 - t1 > period * (1.0 - 1e-3)) continue;
        bool dup = false;
        for (const PlanarCrossing& pc : rep.crossings)
            if (std::abs(pc.t1 - t1) + std::abs(pc.t2 - t2) <
                1e-6 * period)
                dup = true;
        if (dup) continue;
        const detail::PlanarPoint p = detail::planar(tr.state(t1));
        rep.crossings.push_back({t1, t2, p.x, p.y});
    }
    std::sort(rep.crossings.begin(), rep.crossings.end(),
              [](const PlanarCrossing& a, const PlanarCrossing& b) {
                  return a.t1 < b.t1;
              });
    rep.embedded = rep.crossings.empty();
    return rep;
}

} // namespace geotori
