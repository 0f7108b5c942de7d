// geodesic_flow.hpp: the geodesic initial value problem of the reduced
// disk metric, with half-turn crossing events.
//
// State is y = (ρ, θ, ρ̇, θ̇) and the geodesic equations of
// dρ² + varphi(ρ)² dθ² read
//
//     ρ̈ = varphi(ρ) varphi'(ρ) θ̇²,     θ̈ = −2 (varphi'/varphi) ρ̇ θ̇.
//
// Every trajectory in this library is launched from the shooting family
//     y(0) = (β(s), 0, 0, 1),
// i.e. tangentially from the start circle of parameter s.  Two first
// integrals are tracked as accuracy monitors: the angular momentum
// ("Clairaut") c = θ̇ varphi² and the speed² E = ρ̇² + varphi² θ̇².
//
// A crossing event records the m-th passage of θ through mπ (m > 0 forward
// in t, m < 0 backward); the event times ℓ_m feed the shooting function.
// θ̇ stays in (0, 1] on this family, so θ is a strictly increasing clock
// and events are simple roots of the dense interpolant.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotori/dopri5.hpp"
#include "geotori/errors.hpp"
#include "geotori/metric_profile.hpp"

namespace geotori {

struct GeodesicState {
    double t;
    double rho, theta, rho_dot, theta_dot;
};

struct CrossingEvent {
    int m;       // θ(t_m) = m π
    double t;    // = state.t
    GeodesicState state;
};

// Right-hand side of the geodesic system as a plain 4-vector
// (dρ, dθ, dρ̈... i.e. (ρ̇, θ̇, ρ̈, θ̈)).
inline std::array<double, 4> geodesic_rhs(const EllipsoidGeometry& g,
                                          const GeodesicState& st) {
    const ProfileJet p = g.profile_jet(st.rho);
    return {st.rho_dot, st.theta_dot,
            p.value * p.slope * st.theta_dot * st.theta_dot,
            -2.0 * (p.slope / p.value) * st.rho_dot * st.theta_dot};
}

// Angular momentum c = θ̇ varphi(ρ)²; conserved along geodesics.
inline double clairaut(const EllipsoidGeometry& g, const GeodesicState& st) {
    const double v = g.profile(st.rho);
    return st.theta_dot * v * v;
}

// Squared speed E = ρ̇² + varphi(ρ)² θ̇²; conserved along geodesics.
inline double energy(const EllipsoidGeometry& g, const GeodesicState& st) {
    const double v = g.profile(st.rho);
    return st.rho_dot * st.rho_dot + v * v * st.theta_dot * st.theta_dot;
}

namespace detail {

struct GeodesicSystem {
    static constexpr int dim = 4;
    const EllipsoidGeometry* g;
    void operator()(double /*t*/, const std::array<double, 4>& y,
                    std::array<double, 4>& dy) const {
        const ProfileJet p = g->profile_jet(y[0]);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = p.value * p.slope * y[3] * y[3];
        dy[3] = -2.0 * (p.slope / p.value) * y[2] * y[3];
    }
};

struct TrajectoryBuilder;

} // namespace detail

// A computed geodesic: dense-output segments (re-evaluable at any interior
// t), crossing events, and first-integral drift diagnostics.  Holds no
// reference to the geometry it came from.
class Trajectory {
public:
    double a() const { return a_; }
    double s() const { return s_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    double clairaut0() const { return c0_; }
    double energy0() const { return E0_; }
    // Largest relative first-integral deviations seen at accepted steps.
    double max_clairaut_drift() const { return drift_c_; }
    double max_energy_drift() const { return drift_E_; }

    const std::vector<CrossingEvent>& crossings() const { return events_; }

    bool has_crossing(int m) const {
        for (const auto& e : events_)
            if (e.m == m) return true;
        return false;
    }

    const CrossingEvent& crossing(int m) const {
        for (const auto& e : events_)
            if (e.m == m) return e;
        throw std::out_of_range("Trajectory::crossing: no event m = " +
                                std::to_string(m));
    }

    GeodesicState state(double t) const {
        const DenseSegment<4>& seg = segment_at(t);
        const auto y = seg.eval(t);
        return {t, y[0], y[1], y[2], y[3]};
    }

    const std::vector<DenseSegment<4>>& segments() const { return segs_; }

private:
    friend struct detail::TrajectoryBuilder;
    double a_ = 0.0, s_ = 0.0;
    double t_min_ = 0.0, t_max_ = 0.0;
    double c0_ = 0.0, E0_ = 0.0;
    double drift_c_ = 0.0, drift_E_ = 0.0;
    std::vector<DenseSegment<4>> segs_; // sorted by t_left
    std::vector<CrossingEvent> events_; // sorted by t

    const DenseSegment<4>& segment_at(double t) const {
        if (segs_.empty())
            throw std::logic_error("Trajectory: empty");
        const double slack =
            1e-9 * std::max({1.0, std::abs(t_min_), std::abs(t_max_)});
        if (!(t >= t_min_ - slack) || !(t <= t_max_ + slack))
            throw std::domain_error(
                "Trajectory::state: t outside [" + std::to_string(t_min_) +
                ", " + std::to_string(t_max_) + "]");
        // First segment whose left edge lies beyond t, then step back one.
        auto it = std::upper_bound(
            segs_.begin(), segs_.end(), t,
            [](double tv, const DenseSegment<4>& s) { return tv < s.t_left(); });
        if (it != segs_.begin()) --it;
        return *it;
    }
};

namespace detail {

// Locate θ(t) = target inside one accepted step by Newton on the dense
// interpolant with a bisection bracket (θ is strictly increasing in t).
inline double solve_crossing(const DenseSegment<4>& seg, double target,
                             double event_tol) {
    double lo = seg.t_left(), hi = seg.t_right();
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double gv = seg.eval(t, 1) - target;
        if (std::abs(gv) <= 0.1 * event_tol) break;
        if (gv > 0.0) hi = t; else lo = t;
        const double slope = seg.eval(t, 3); // dense θ̇
        double tn = (slope > 0.0) ? t - gv / slope : lo - 1.0;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (hi - lo <= 4e-16 * std::max(1.0, std::abs(t))) break;
        t = tn;
    }
    return t;
}

class TrajectoryBuilder {
public:
    // stop_k > 0: run until |stop_k| crossings in the given direction.
    // Otherwise run until |t| >= |stop_time|.
    static Trajectory run(const EllipsoidGeometry& g, double s,
                          const IntegratorConfig& cfg, int direction,
                          int stop_k, double stop_time) {
        Trajectory tr;
        tr.a_ = g.a();
        tr.s_ = s;
        const double rho0 = g.start_radius(s);
        const std::array<double, 4> y0{rho0, 0.0, 0.0, 1.0};
        const double v0 = g.profile(rho0);
        tr.c0_ = tr.E0_ = v0 * v0;

        GeodesicSystem sys{&g};
        Dopri5Stepper<GeodesicSystem> stepper(sys, cfg, 0.0, y0,
                                              double(direction));
        int found = 0;
        while (true) {
            const DenseSegment<4> seg = stepper.step();
            tr.segs_.push_back(seg);

            // First-integral drift at the step endpoint.
            const auto& y = stepper.y();
            const GeodesicState st{stepper.t(), y[0], y[1], y[2], y[3]};
            const double dc = std::abs(clairaut(g, st) - tr.c0_) / tr.c0_;
            const double dE = std::abs(energy(g, st) - tr.E0_) / tr.E0_;
            tr.drift_c_ = std::max(tr.drift_c_, dc);
            tr.drift_E_ = std::max(tr.drift_E_, dE);
            if (std::max(dc, dE) > cfg.max_drift)
                throw IntegrationError(
                    "integrate: first-integral drift " +
                    std::to_string(std::max(dc, dE)) + " exceeds " +
                    std::to_string(cfg.max_drift) + " at t = " +
                    std::to_string(stepper.t()));

            // Harvest every multiple of π crossed during this step.
            const double th0 = seg.eval(seg.t0, 1);
            const double th1 = seg.eval(seg.t0 + seg.h, 1);
            int m = (found + 1) * direction;
            while (direction * (m * kPi) > direction * th0 - 0.0 &&
                   direction * (m * kPi) <= direction * th1) {
                const double tm = solve_crossing(seg, m * kPi, cfg.event_tol);
                const auto ym = seg.eval(tm);
                tr.events_.push_back(
                    {m, tm, {tm, ym[0], ym[1], ym[2], ym[3]}});
                ++found;
                if (stop_k > 0 && found >= stop_k) break;
                m = (found + 1) * direction;
            }

            if (stop_k > 0) {
                if (found >= stop_k) break;
            } else if (direction * stepper.t() >= direction * stop_time) {
                break;
            }
        }
        // Time-clamped runs report exactly the requested domain; the
        // final dense segment still covers the slight overshoot, but
        // events harvested inside the overshoot are not reported.
        const double t_end = stop_k > 0 ? stepper.t() : stop_time;
        if (stop_k == 0)
            std::erase_if(tr.events_, [&](const CrossingEvent& e) {
                return direction * e.t > direction * stop_time;
            });
        if (direction > 0) {
            tr.t_min_ = 0.0;
            tr.t_max_ = t_end;
        } else {
            tr.t_min_ = t_end;
            tr.t_max_ = 0.0;
            std::reverse(tr.segs_.begin(), tr.segs_.end());
            std::reverse(tr.events_.begin(), tr.events_.end());
        }
        return tr;
    }

    static Trajectory merge(Trajectory back, Trajectory fwd) {
        back.segs_.insert(back.segs_.end(), fwd.segs_.begin(),
                          fwd.segs_.end());
        back.events_.insert(back.events_.end(), fwd.events_.begin(),
                            fwd.events_.end());
        back.t_max_ = fwd.t_max_;
        back.drift_c_ = std::max(back.drift_c_, fwd.drift_c_);
        back.drift_E_ = std::max(back.drift_E_, fwd.drift_E_);
        return back;
    }
};

inline void check_launch_args(double s, const char* who) {
    if (!(std::abs(s) <= 1.0 - 1e-9))
        throw std::invalid_argument(
            std::string(who) +
            ": launch parameter must satisfy |s| <= 1 - 1e-9");
}

} // namespace detail

// Integrate the launch (β(s), 0, 0, 1) forward until θ has crossed
// k_target half-turns; events 1..k_target are recorded.
inline Trajectory integrate(const EllipsoidGeometry& g, double s,
                            int k_target, const IntegratorConfig& cfg = {}) {
    detail::check_launch_args(s, "integrate");
    if (k_target < 1)
        throw std::invalid_argument("integrate: k_target must be >= 1");
    return detail::TrajectoryBuilder::run(g, s, cfg, +1, k_target, 0.0);
}

// Integrate to the signed time T (backward if T < 0), recording any
// half-turn crossings passed along the way.
inline Trajectory integrate_time(const EllipsoidGeometry& g, double s,
                                 double T, const IntegratorConfig& cfg = {}) {
    detail::check_launch_args(s, "integrate_time");
    if (!(T != 0.0) || !std::isfinite(T))
        throw std::invalid_argument("integrate_time: need finite T != 0");
    return detail::TrajectoryBuilder::run(g, s, cfg, T > 0.0 ? +1 : -1, 0, T);
}

// Integrate both time directions until k half-turns each way; the result
// covers [−ℓ_k, ℓ_k] with events −k..−1, 1..k.  This is the full closed
// curve when s is a root of the shooting function.
inline Trajectory integrate_closed(const EllipsoidGeometry& g, double s,
                                   int k, const IntegratorConfig& cfg = {}) {
    detail::check_launch_args(s, "integrate_closed");
    if (k < 1)
        throw std::invalid_argument("integrate_closed: k must be >= 1");
    Trajectory fwd = detail::TrajectoryBuilder::run(g, s, cfg, +1, k, 0.0);
    Trajectory back = detail::TrajectoryBuilder::run(g, s, cfg, -1, k, 0.0);
    return detail::TrajectoryBuilder::merge(std::move(back), std::move(fwd));
}

// ℓ_k: time of the k-th half-turn crossing.
inline double crossing_time(const EllipsoidGeometry& g, double s, int k,
                            const IntegratorConfig& cfg = {}) {
    return integrate(g, s, k, cfg).crossing(k).t;
}

} // namespace geotori
