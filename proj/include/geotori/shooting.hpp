// shooting.hpp: the shooting function for closed geodesics through the
// launch family, its linearization along the trivial branch, and the
// discrete classification of the curves found.
//
// The launch (β(s), 0, 0, 1) meets θ = kπ at time ℓ_k with radial speed
//
//     f_k(a, s) = ρ̇ at the k-th half-turn crossing.
//
// f_k(a, 0) = 0 for every a (the equatorial circle), and s ↦ f_k(a, s) = 0
// closes the curve: by the mirror symmetry of the launch it then repeats
// with period 2ℓ_k.  Linearizing about s = 0 gives the closed form
//
//     ∂f_k/∂s (a, 0) = −β'(0) · ω(a) · sin(ω(a) k π),
//     ω(a) = 2a / √(a²+1),
//
// whose zeros ω = j/k are the axis ratios where a new branch of closed
// geodesics is born.  Differentiating once more across such a zero yields
//
//     ∂²f_k/∂a∂s = β'(0) (−1)^{j+1} (4k²−j²)^{3/2} π j / (4k³),
//
// the transversality constant certifying genuine branch crossings.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotori/geodesic_flow.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/roots.hpp"

namespace geotori {

struct ShootingConfig {
    IntegratorConfig ode;
    double root_xtol = 1e-12;    // certified bracket width at roots
    double root_ftol = 1e-10;    // |f| accepted as a root
    double h_s = 1e-6;           // FD step in s for slopes
    double h_a = 1e-4;           // FD step in a for the mixed partial
    double primitive_tol = 1e-6; // |f_{k'}| above this = transverse pass
    double dead_band = 1e-10;    // |ρ − ρ_eq| below this counts as "on"
};

struct ShootingResult {
    double a = 0.0, s = 0.0;
    int k = 0;
    double f = 0.0;         // ρ̇ at the k-th crossing
    double ell = 0.0;       // ℓ_k
    double max_drift = 0.0; // worst first-integral drift in the solve
};

inline ShootingResult shooting_value(const EllipsoidGeometry& g, double s,
                                     int k,
                                     const ShootingConfig& cfg = {}) {
    const Trajectory tr = integrate(g, s, k, cfg.ode);
    const CrossingEvent& ev = tr.crossing(k);
    return {g.a(), s, k, ev.state.rho_dot, ev.t,
            std::max(tr.max_clairaut_drift(), tr.max_energy_drift())};
}

// Axis ratio at which ω(a) = q = j/k, i.e. where sin(ω k π) loses the
// zero of index j:  a = q / √(4 − q²), valid for 0 < q < 2.
inline double critical_axis_ratio(int j, int k) {
    if (k < 1 || j < 1 || j >= 2 * k)
        throw std::invalid_argument(
            "critical_axis_ratio: need k >= 1 and 1 <= j <= 2k-1");
    const double q = double(j) / double(k);
    return q / std::sqrt(4.0 - q * q);
}

inline double shooting_slope_closed_form(double a, int k) {
    const double om = 2.0 * a / std::sqrt(a * a + 1.0);
    const double beta_slope = kPi * kPi * std::sqrt(a * a + 1.0) / 4.0;
    return -beta_slope * om * std::sin(om * k * kPi);
}

struct SlopeAtZero {
    double numeric;     // centered FD of f_k in s at s = 0
    double closed_form; // −β'(0) ω sin(ω k π)
};

namespace detail {

// Slopes are O(h_s)-small differences of O(1) quantities; integrate the
// two probe trajectories well below the FD noise floor regardless of the
// caller's trajectory tolerance.
inline IntegratorConfig tightened(IntegratorConfig ode) {
    ode.rtol = std::min(ode.rtol, 1e-12);
    ode.atol = std::min(ode.atol, 1e-13);
    return ode;
}

} // namespace detail

inline SlopeAtZero shooting_slope_at_zero(const EllipsoidGeometry& g, int k,
                                          const ShootingConfig& cfg = {}) {
    ShootingConfig c = cfg;
    c.ode = detail::tightened(cfg.ode);
    const double h = cfg.h_s;
    const double fp = shooting_value(g, +h, k, c).f;
    const double fm = shooting_value(g, -h, k, c).f;
    return {(fp - fm) / (2.0 * h), shooting_slope_closed_form(g.a(), k)};
}

struct ClosedGeodesicRoot {
    ShootingResult result;
    int iterations = 0;
    double bracket_width = 0.0;
    bool converged = false;
};

// Brent solve of f_k(a, ·) = 0 inside [s_lo, s_hi]; the endpoints must
// straddle a sign change.
inline ClosedGeodesicRoot find_closed_geodesic(const EllipsoidGeometry& g,
                                               int k, double s_lo,
                                               double s_hi,
                                               const ShootingConfig& cfg =
                                                   {}) {
    auto f = [&](double s) { return shooting_value(g, s, k, cfg).f; };
    const RootResult r =
        brent(f, s_lo, s_hi, cfg.root_xtol, cfg.root_ftol);
    ClosedGeodesicRoot out;
    out.result = shooting_value(g, r.x, k, cfg);
    out.iterations = r.iterations;
    out.bracket_width = r.bracket_width;
    out.converged = r.converged;
    return out;
}

// Discrete invariants of the geodesic launched at (a, s), observed through
// k half-turns and doubled to the full closed curve by mirror symmetry.
struct GeodesicClassification {
    bool closed = false;     // |f_k| within root_ftol
    bool simple = false;     // closed with k = 1 (embedded circle criterion)
    bool primitive = false;  // closed and not an iterate of a shorter root
    bool degenerate = false; // some intermediate crossing was ambiguous
    int winding = 0;         // half-turns of θ over [0, ℓ_k]
    int equator_crossings = 0;      // #(curve ∩ equatorial circle), full period
    int diameter_self_crossings = 0; // transverse self-meetings on θ ∈ {0, π}
    std::vector<double> f_at_crossings; // ρ̇ at crossings 1..k
};

inline GeodesicClassification classify(const EllipsoidGeometry& g, double s,
                                       int k,
                                       const ShootingConfig& cfg = {}) {
    if (k < 1)
        throw std::invalid_argument("classify: k must be >= 1");
    const Trajectory tr = integrate(g, s, k, cfg.ode);
    const double ell = tr.crossing(k).t;
    GeodesicClassification cl;

    cl.f_at_crossings.reserve(k);
    for (int m = 1; m <= k; ++m)
        cl.f_at_crossings.push_back(tr.crossing(m).state.rho_dot);
    const double fk = std::abs(cl.f_at_crossings.back());
    cl.closed = fk <= cfg.root_ftol * 10.0;
    cl.simple = cl.closed && k == 1;

    cl.winding = int(std::lround(tr.crossing(k).state.theta / kPi));

    // Intermediate crossings: closed-at (iterate), transverse (genuine
    // self-intersection on the θ ∈ {0, π} diameter), or ambiguous.
    bool iterate = false;
    for (int m = 1; m < k; ++m) {
        const double fm = std::abs(cl.f_at_crossings[m - 1]);
        if (fm <= cfg.root_ftol * 10.0)
            iterate = true;
        else if (fm > cfg.primitive_tol)
            ++cl.diameter_self_crossings;
        else
            cl.degenerate = true;
    }
    cl.primitive = cl.closed && !iterate;

    // Equatorial-circle crossings: sign changes of ρ − ρ_eq along the half
    // period [0, ℓ_k], doubled.  Samples inside the dead band are treated
    // as lying on the circle and skipped, so the trivial root reports 0.
    const double rho_eq = g.clifford_radius();
    int half_crossings = 0;
    int last_sign = 0;
    for (const DenseSegment<4>& seg : tr.segments()) {
        if (seg.t_right() <= 0.0) continue;
        for (int i = 0; i < 8; ++i) {
            const double t = seg.t0 + seg.h * (i / 8.0);
            if (t < 0.0 || t > ell) continue;
            const double u = seg.eval(t, 0) - rho_eq;
            if (std::abs(u) <= cfg.dead_band) continue;
            const int sign = u > 0.0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++half_crossings;
            last_sign = sign;
        }
    }
    {   // include the endpoint t = ℓ_k
        const double u = tr.crossing(k).state.rho - rho_eq;
        if (std::abs(u) > cfg.dead_band) {
            const int sign = u > 0.0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++half_crossings;
        }
    }
    cl.equator_crossings = 2 * half_crossings;
    return cl;
}

struct Transversality {
    double numeric;     // centered FD in a of the numeric slope at zero
    double closed_form; // β'(0) (−1)^{j+1} (4k²−j²)^{3/2} π j / (4k³)
};

// Mixed partial ∂²f_k/∂a∂s at the bifurcation point (a = a_{j,k}, s = 0).
inline Transversality transversality(int j, int k, double quad_tol = 1e-12,
                                     const ShootingConfig& cfg = {}) {
    const double a = critical_axis_ratio(j, k); // validates j, k
    const double ha = cfg.h_a;
    const EllipsoidGeometry gp(a + ha, quad_tol);
    const EllipsoidGeometry gm(a - ha, quad_tol);
    const double sp = shooting_slope_at_zero(gp, k, cfg).numeric;
    const double sm = shooting_slope_at_zero(gm, k, cfg).numeric;

    const double beta_slope = kPi * kPi * std::sqrt(a * a + 1.0) / 4.0;
    const double jj = double(j), kk = double(k);
    const double closed = beta_slope * ((j % 2 == 1) ? 1.0 : -1.0) *
                          std::pow(4.0 * kk * kk - jj * jj, 1.5) * kPi * jj /
                          (4.0 * kk * kk * kk);
    return {(sp - sm) / (2.0 * ha), closed};
}

} // namespace geotori
