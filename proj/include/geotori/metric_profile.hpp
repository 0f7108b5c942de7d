// metric_profile.hpp: the singular surface-of-revolution metric on a disk
// whose geodesics encode equivariant minimal tori in a 3-ellipsoid.
//
// For an axis ratio a > 0 the reduced metric on the closed disk of radius
// L_a is  dρ² + varphi(ρ)² dθ², built from the "latitude" change of
// variable φ ∈ [0, π/2]:
//
//     ρ(φ)      = 2π ∫₀^φ cos(ξ) √(a² cos²ξ + sin²ξ) dξ   (arclength)
//     varphi(ρ) = π a sin(2 φ(ρ))                          (profile)
//
// varphi vanishes at both ρ = 0 (smooth rotation center: varphi'(0) = 1)
// and ρ = L_a (metrically singular boundary).  The circle of maximal
// profile radius sits at the equatorial latitude φ = π/4; its ρ-value
// ("clifford_radius") carries the distinguished closed geodesic from
// which every bifurcation branch in this library emanates.
//
// EllipsoidGeometry tabulates ρ(φ) once on a Chebyshev-clustered grid with
// per-panel adaptive quadrature and evaluates ρ, φ = ρ⁻¹, varphi and its
// ρ-derivatives from local quintic Hermite panels.  All node data (value,
// first and second derivative) is analytic, so panel interpolation error
// is ~h⁶ and negligible against quad_tol for the tabulated panel widths.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotori/errors.hpp"
#include "geotori/quadrature.hpp"

namespace geotori {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct ProfileDerivatives {
    double first;  // dvarphi/dρ
    double second; // d²varphi/dρ²
};

struct ProfileJet {
    double value; // varphi(ρ)
    double slope; // dvarphi/dρ
};

class EllipsoidGeometry {
public:
    // Fraction of the disk radius next to the boundary where profile
    // derivative evaluation is refused (varphi' blows up like a simple
    // pole in the latitude chart there and finite differences of it are
    // meaningless).
    static constexpr double kBoundaryGuard = 1e-6;

    explicit EllipsoidGeometry(double a, double quad_tol = 1e-12)
        : a_(a), quad_tol_(quad_tol) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument(
                "EllipsoidGeometry: axis ratio a must be positive and finite");
        if (!(quad_tol >= 1e-15) || !(quad_tol <= 1e-2))
            throw std::invalid_argument(
                "EllipsoidGeometry: quad_tol must lie in [1e-15, 1e-2]");
        build_table();
    }

    double a() const { return a_; }
    double quad_tol() const { return quad_tol_; }

    // Disk radius L_a = ρ(π/2).
    double disk_radius() const { return rho_[kPanels]; }

    // ρ-coordinate of the equatorial circle φ = π/4 (node kPanels/2, so
    // this is a direct quadrature value, not an interpolated one).
    double clifford_radius() const { return rho_[kPanels / 2]; }

    // Arclength ρ(φ) for φ ∈ [0, π/2].
    double radius(double phi) const {
        const double t = check_phi(phi, "radius");
        if (t <= 0.0) return 0.0;
        if (t >= kHalfPi) return rho_[kPanels];
        const int i = panel_of_phi(t);
        return panel_value(i, (t - phi_[i]) / (phi_[i + 1] - phi_[i]));
    }

    // dρ/dφ = 2π cos(φ) √(a² cos²φ + sin²φ); analytic, no table involved.
    double radius_deriv(double phi) const {
        const double t = check_phi(phi, "radius_deriv");
        return 2.0 * kPi * std::cos(t) * w_of(t);
    }

    // d²ρ/dφ² = 2π (−sinφ · w + cosφ · w'),  w' = (1−a²) sinφ cosφ / w.
    double radius_deriv2(double phi) const {
        const double t = check_phi(phi, "radius_deriv2");
        const double w = w_of(t), sp = std::sin(t), cp = std::cos(t);
        return 2.0 * kPi * (-sp * w + cp * (1.0 - a_ * a_) * sp * cp / w);
    }

    // Latitude φ(ρ): inverse of radius() on [0, L_a].
    double latitude(double rho) const {
        const double r = check_rho(rho, "latitude");
        if (r <= 0.0) return 0.0;
        if (r >= rho_[kPanels]) return kHalfPi;
        const int i = int(std::upper_bound(rho_.begin(), rho_.end(), r) -
                          rho_.begin()) - 1;
        return invert_panel(std::min(i, kPanels - 1), r);
    }

    // Profile varphi(ρ) = π a sin(2 φ(ρ)).
    double profile(double rho) const {
        return kPi * a_ * std::sin(2.0 * latitude(rho));
    }

    // First and second ρ-derivatives of varphi, in closed form through the
    // latitude chart:
    //   varphi'  = a cos2φ / (cosφ · w)
    //   varphi'' = a (−2 sin2φ · D − cos2φ · D') / (2π D³),  D = cosφ · w.
    // Refused within kBoundaryGuard of the boundary, where D → 0.
    ProfileDerivatives profile_derivs(double rho) const {
        const double r = check_rho(rho, "profile_derivs");
        const double L = rho_[kPanels];
        if (r > L * (1.0 - kBoundaryGuard))
            throw SingularBoundaryError(
                "profile_derivs: rho = " + std::to_string(r) +
                " lies in the singular boundary guard band of L = " +
                std::to_string(L));
        const double phi = latitude(r);
        const double w = w_of(phi);
        const double sp = std::sin(phi), cp = std::cos(phi);
        const double s2 = 2.0 * sp * cp, c2 = 1.0 - 2.0 * sp * sp;
        const double D = cp * w;
        const double wp = (1.0 - a_ * a_) * sp * cp / w;
        const double Dp = -sp * w + cp * wp;
        return {a_ * c2 / D,
                a_ * (-2.0 * s2 * D - c2 * Dp) / (2.0 * kPi * D * D * D)};
    }

    // varphi and varphi' together from a single latitude inversion; this is
    // the geodesic right-hand side's hot path.  Same guard band as
    // profile_derivs.
    ProfileJet profile_jet(double rho) const {
        const double r = check_rho(rho, "profile_jet");
        const double L = rho_[kPanels];
        if (r > L * (1.0 - kBoundaryGuard))
            throw SingularBoundaryError(
                "profile_jet: rho = " + std::to_string(r) +
                " lies in the singular boundary guard band of L = " +
                std::to_string(L));
        const double phi = latitude(r);
        const double w = w_of(phi);
        const double sp = std::sin(phi), cp = std::cos(phi);
        return {kPi * a_ * 2.0 * sp * cp,
                a_ * (1.0 - 2.0 * sp * sp) / (cp * w)};
    }

    // Launch radius β(s) = ρ((1+s) π/4) for s ∈ (−1, 1): the one-parameter
    // family of start circles used by the shooting method, with β(0) the
    // equatorial circle, β(−1) the center and β(1) the boundary.
    double start_radius(double s) const {
        if (!(std::abs(s) < 1.0))
            throw std::invalid_argument(
                "start_radius: parameter s must satisfy |s| < 1");
        return radius((1.0 + s) * kPi / 4.0);
    }

    // Inverse of start_radius on [0, L_a]: s(r) = (4/π) φ(r) − 1.
    double start_param(double rho) const {
        return (4.0 / kPi) * latitude(rho) - 1.0;
    }

    // β'(0) = ρ'(π/4) · π/4 = π² √(a²+1) / 4; the linearized-shooting
    // normalization constant.
    double start_radius_slope0() const {
        return radius_deriv(kPi / 4.0) * (kPi / 4.0);
    }

private:
    static constexpr int kPanels = 2048; // even, so φ = π/4 is a node
    static constexpr double kHalfPi = kPi / 2.0;

    double a_, quad_tol_;
    std::vector<double> phi_;  // Chebyshev–Lobatto latitudes, size kPanels+1
    std::vector<double> rho_;  // ρ(φ_i), cumulative quadrature
    std::vector<double> m_;    // ρ'(φ_i), analytic
    std::vector<double> M_;    // ρ''(φ_i), analytic

    double w_of(double phi) const {
        const double s = std::sin(phi);
        return std::sqrt(a_ * a_ + (1.0 - a_ * a_) * s * s);
    }

    void build_table() {
        phi_.resize(kPanels + 1);
        rho_.resize(kPanels + 1);
        m_.resize(kPanels + 1);
        M_.resize(kPanels + 1);
        for (int i = 0; i <= kPanels; ++i) {
            phi_[i] = (kPi / 4.0) * (1.0 - std::cos(i * kPi / kPanels));
            const double w = w_of(phi_[i]);
            const double sp = std::sin(phi_[i]), cp = std::cos(phi_[i]);
            m_[i] = 2.0 * kPi * cp * w;
            M_[i] = 2.0 * kPi *
                    (-sp * w + cp * (1.0 - a_ * a_) * sp * cp / w);
        }
        phi_[kPanels] = kHalfPi; // exact endpoint, no cos() rounding
        auto g = [this](double phi) {
            return 2.0 * kPi * std::cos(phi) * w_of(phi);
        };
        const double panel_tol = quad_tol_ / kPanels;
        rho_[0] = 0.0;
        for (int i = 0; i < kPanels; ++i)
            rho_[i + 1] =
                rho_[i] + adaptive_simpson(g, phi_[i], phi_[i + 1], panel_tol);
    }

    double check_phi(double phi, const char* who) const {
        // Tolerate rounding-level excursions beyond the endpoints.
        const double slack = 1e-9;
        if (!(phi >= -slack) || !(phi <= kHalfPi + slack))
            throw std::domain_error(std::string(who) +
                                    ": latitude outside [0, pi/2]");
        return std::clamp(phi, 0.0, kHalfPi);
    }

    double check_rho(double rho, const char* who) const {
        const double L = rho_[kPanels];
        const double slack = 1e-9 * L;
        if (!(rho >= -slack) || !(rho <= L + slack))
            throw std::domain_error(std::string(who) +
                                    ": rho outside [0, L_a]");
        return std::clamp(rho, 0.0, L);
    }

    int panel_of_phi(double phi) const {
        // Invert the Chebyshev node map i ↦ (π/4)(1 − cos(iπ/N)).
        const double c = std::clamp(1.0 - 4.0 * phi / kPi, -1.0, 1.0);
        const int i = int(std::acos(c) * kPanels / kPi);
        return std::clamp(i, 0, kPanels - 1);
    }

    // Quintic Hermite basis on [0,1] matching value / first / second
    // derivative at both ends.
    static void hermite5(double t, double H[6]) {
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        H[0] = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        H[1] = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        H[2] = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
        H[3] = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        H[4] = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        H[5] = 0.5 * t3 - t4 + 0.5 * t5;
    }

    static void hermite5_deriv(double t, double H[6]) {
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
        H[0] = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        H[1] = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        H[2] = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
        H[3] = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
        H[4] = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        H[5] = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;
    }

    double panel_value(int i, double t) const {
        const double h = phi_[i + 1] - phi_[i];
        double H[6];
        hermite5(t, H);
        return rho_[i] * H[0] + h * m_[i] * H[1] + h * h * M_[i] * H[2] +
               rho_[i + 1] * H[3] + h * m_[i + 1] * H[4] +
               h * h * M_[i + 1] * H[5];
    }

    double panel_slope(int i, double t) const { // d(value)/dt, NOT /dφ
        const double h = phi_[i + 1] - phi_[i];
        double H[6];
        hermite5_deriv(t, H);
        return rho_[i] * H[0] + h * m_[i] * H[1] + h * h * M_[i] * H[2] +
               rho_[i + 1] * H[3] + h * m_[i + 1] * H[4] +
               h * h * M_[i + 1] * H[5];
    }

    // Solve panel_value(i, t) = r for t ∈ [0, 1] by safeguarded Newton.
    // ρ is strictly increasing, but the slope vanishes at the very last
    // node (φ = π/2), so Newton keeps a bisection bracket at all times.
    double invert_panel(int i, double r) const {
        double lo = 0.0, hi = 1.0;
        double t = std::clamp((r - rho_[i]) / (rho_[i + 1] - rho_[i]),
                              0.0, 1.0);
        const double ftol = 1e-15 * std::max(1.0, rho_[kPanels]);
        for (int it = 0; it < 80; ++it) {
            const double v = panel_value(i, t) - r;
            if (std::abs(v) <= ftol)
                break;
            if (v > 0.0) hi = t; else lo = t;
            const double sl = panel_slope(i, t);
            double tn = (sl > 0.0) ? t - v / sl : -1.0;
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            if (hi - lo < 1e-17) break;
            t = tn;
        }
        return phi_[i] + t * (phi_[i + 1] - phi_[i]);
    }
};

} // namespace geotori
