// selftest.hpp: the end-to-end verification ladder.
//
// Eleven criteria, ordered so that each layer certifies what the next one
// builds on: instant enumeration, profile closed forms, first-integral
// conservation, the linearized-slope grid, transversality constants, a
// full root solve with classification, two global branch continuations,
// the root involution, lift fidelity, and a properness guard over every
// branch point the run produced.  Each criterion reports pass/fail, wall
// time (checked against a budget), and a one-line detail.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "geotori/bifurcation.hpp"
#include "geotori/geodesic_flow.hpp"
#include "geotori/lift.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/shooting.hpp"

namespace geotori::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget = 0.0;
    std::string detail;
};

struct Options {
    int threads = 0;           // 0 = hardware concurrency (capped)
    unsigned seed = 20260816u; // drives the random-launch criterion
};

namespace detail {

// Failure collector: criteria stack up observations; empty = pass.
class Check {
public:
    void require(bool ok, const std::string& msg) {
        if (!ok) {
            if (!fails_.empty()) fails_ += "; ";
            fails_ += msg;
            ++nfail_;
        }
        ++ntotal_;
    }
    bool ok() const { return nfail_ == 0; }
    int total() const { return ntotal_; }
    std::string message(const std::string& on_pass) const {
        return ok() ? on_pass : fails_;
    }

private:
    std::string fails_;
    int nfail_ = 0, ntotal_ = 0;
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Context {
    int threads = 1;
    unsigned seed = 20260816u;
    std::optional<ClosedGeodesicRoot> b11_root; // k = 1 root at a = 0.5
    Branch b11_plus, b11_minus;                 // criterion 7 output
    Branch b12_plus;                            // criterion 8 output
    Branch b23_plus;                            // criterion 9 output
    std::vector<std::pair<double, double>> extra_points; // loose (a, s)
};

inline const ClosedGeodesicRoot& b11_root(Context& ctx) {
    if (!ctx.b11_root) {
        const EllipsoidGeometry g(0.5);
        ctx.b11_root = find_closed_geodesic(g, 1, 0.4, 0.6);
        ctx.extra_points.push_back({0.5, ctx.b11_root->result.s});
    }
    return *ctx.b11_root;
}

// --- criterion 1: instant enumeration -------------------------------

inline CriterionResult c1_instants(Context&) {
    Check ck;
    const auto inst = bifurcation_instants(6);
    bool has_11 = false;
    for (const auto& bi : inst) {
        if (bi.j == 1 && bi.k == 1) {
            has_11 = true;
            ck.require(std::abs(bi.a - 1.0 / std::sqrt(3.0)) <= 1e-14,
                       "a_{1,1} != 1/sqrt(3) to 1e-14");
        }
        ck.require(std::abs(bi.a - 1.0) > 1e-9,
                   "an instant equals the round-sphere ratio a = 1");
    }
    ck.require(has_11, "missing the (1,1) instant");
    for (std::size_t i = 1; i < inst.size(); ++i)
        ck.require(inst[i].a - inst[i - 1].a > 1e-12,
                   "instants not strictly increasing / distinct");
    return {1, "instants-enumeration", ck.ok(), 0.0, 1.0,
            ck.message(std::to_string(inst.size()) +
                       " instants for k<=6, distinct, none at a=1")};
}

// --- criterion 2: profile closed forms -------------------------------

inline CriterionResult c2_profile(Context&) {
    Check ck;
    const EllipsoidGeometry g1(1.0);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double phi = (kPi / 2.0) * i / 200.0;
        worst = std::max(worst,
                         std::abs(g1.radius(phi) - 2.0 * kPi * std::sin(phi)));
    }
    ck.require(worst <= 1e-10, "a=1 radius mismatch " + fmt(worst));
    double worst_v = 0.0, worst_phi = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double rho = 2.0 * kPi * i / 200.0;
        const double closed =
            rho * std::sqrt(1.0 - rho * rho / (4.0 * kPi * kPi));
        worst_v = std::max(worst_v, std::abs(g1.profile(rho) - closed));
        worst_phi = std::max(
            worst_phi,
            std::abs(g1.latitude(rho) - std::asin(rho / (2.0 * kPi))));
    }
    ck.require(worst_v <= 1e-10, "a=1 profile mismatch " + fmt(worst_v));
    ck.require(worst_phi <= 1e-10, "a=1 latitude mismatch " + fmt(worst_phi));
    ck.require(std::abs(g1.disk_radius() - 2.0 * kPi) <= 1e-10,
               "a=1 disk radius != 2pi");

    for (double a : {0.3, 0.5, 1.0, 2.0, 5.0}) {
        const EllipsoidGeometry g(a);
        const double rc = g.clifford_radius();
        ck.require(std::abs(g.profile(rc) - kPi * a) <= 1e-9,
                   "profile at equator != pi a for a=" + fmt(a));
        const ProfileDerivatives d = g.profile_derivs(rc);
        ck.require(std::abs(d.first) <= 1e-9,
                   "profile slope at equator != 0 for a=" + fmt(a));
        const double target = -4.0 * a / (kPi * (a * a + 1.0));
        ck.require(std::abs(d.second - target) <= 1e-9,
                   "profile curvature at equator off for a=" + fmt(a));
    }
    return {2, "profile-closed-forms", ck.ok(), 0.0, 5.0,
            ck.message("a=1 closed forms + equator values at 5 ratios")};
}

// --- criterion 3: first-integral conservation ------------------------

inline CriterionResult c3_conservation(Context& ctx) {
    Check ck;
    std::mt19937 rng(ctx.seed);
    std::uniform_real_distribution<double> ua(0.2, 5.0), us(-0.8, 0.8);
    std::uniform_int_distribution<int> uk(1, 4);
    double worst_drift = 0.0, worst_ell = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double a = ua(rng), s = us(rng);
        const int k = uk(rng);
        const EllipsoidGeometry g(a);
        const Trajectory tr = integrate(g, s, k);
        const double drift =
            std::max(tr.max_clairaut_drift(), tr.max_energy_drift());
        worst_drift = std::max(worst_drift, drift);
        ck.require(drift <= 1e-9,
                   "drift " + fmt(drift) + " at a=" + fmt(a) +
                       " s=" + fmt(s) + " k=" + std::to_string(k));
        const double ell0 = crossing_time(g, 0.0, k);
        const double err = std::abs(ell0 - k * kPi);
        worst_ell = std::max(worst_ell, err);
        ck.require(err <= 1e-10,
                   "ell_k(a,0) != k pi at a=" + fmt(a) +
                       " k=" + std::to_string(k));
    }
    return {3, "first-integral-conservation", ck.ok(), 0.0, 60.0,
            ck.message("50 random launches: max drift " + fmt(worst_drift) +
                       ", max |ell_k - k pi| " + fmt(worst_ell))};
}

// --- criterion 4: linearized slope across a grid ----------------------

inline CriterionResult c4_slope_grid(Context& ctx) {
    Check ck;
    const int n_grid = 200;
    const double a_lo = 0.2, a_hi = 3.0;
    const double da = (a_hi - a_lo) / (n_grid - 1);
    std::ostringstream note;

    auto run_k = [&](int k) {
        std::vector<double> as(n_grid), num(n_grid), cf(n_grid);
        for (int i = 0; i < n_grid; ++i) {
            as[i] = a_lo + da * i;
            const EllipsoidGeometry g(as[i]);
            const SlopeAtZero sl = shooting_slope_at_zero(g, k);
            num[i] = sl.numeric;
            cf[i] = sl.closed_form;
        }
        return std::tuple(as, num, cf);
    };

    std::vector<std::tuple<std::vector<double>, std::vector<double>,
                           std::vector<double>>>
        rows(4);
    if (ctx.threads > 1) {
        std::vector<std::future<void>> fs;
        for (int k = 1; k <= 4; ++k)
            fs.push_back(std::async(std::launch::async,
                                    [&, k]() { rows[k - 1] = run_k(k); }));
        for (auto& f : fs) f.get();
    } else {
        for (int k = 1; k <= 4; ++k) rows[k - 1] = run_k(k);
    }

    for (int k = 1; k <= 4; ++k) {
        const auto& [as, num, cf] = rows[k - 1];
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < n_grid; ++i) {
            scale = std::max(scale, std::abs(cf[i]));
            diff = std::max(diff, std::abs(num[i] - cf[i]));
        }
        ck.require(diff <= 1e-5 * scale,
                   "k=" + std::to_string(k) + " slope grid error " +
                       fmt(diff) + " vs scale " + fmt(scale));
        note << "k" << k << ":" << fmt(diff / scale) << " ";

        // Zero matching: refine every numeric sign change by bisection on
        // the numeric slope itself and compare against the predicted set.
        std::vector<double> zeros;
        for (int i = 0; i + 1 < n_grid; ++i) {
            if (num[i] == 0.0 || num[i] * num[i + 1] >= 0.0) continue;
            auto slope_num = [&](double a) {
                const EllipsoidGeometry g(a);
                return shooting_slope_at_zero(g, k).numeric;
            };
            const RootResult r =
                brent(slope_num, as[i], as[i + 1], 1e-8, 1e-2);
            zeros.push_back(r.x);
        }
        std::vector<double> expected;
        for (int j = 1; j <= 2 * k - 1; ++j) {
            const double a = critical_axis_ratio(j, k);
            if (a > a_lo + da && a < a_hi - da) expected.push_back(a);
        }
        ck.require(zeros.size() == expected.size(),
                   "k=" + std::to_string(k) + ": found " +
                       std::to_string(zeros.size()) + " slope zeros, " +
                       "expected " + std::to_string(expected.size()));
        if (zeros.size() == expected.size())
            for (std::size_t i = 0; i < zeros.size(); ++i)
                ck.require(std::abs(zeros[i] - expected[i]) <= 1e-6,
                           "k=" + std::to_string(k) + " zero " +
                               fmt(zeros[i]) + " vs instant " +
                               fmt(expected[i]));
    }
    return {4, "slope-linearization-grid", ck.ok(), 0.0, 120.0,
            ck.message("rel grid error per k: " + note.str() +
                       "+ all slope zeros at instants")};
}

// --- criterion 5: transversality constants ----------------------------

inline CriterionResult c5_transversality(Context&) {
    Check ck;
    std::ostringstream note;
    for (auto [j, k] : {std::pair{1, 1}, {1, 2}, {3, 2}, {1, 3}, {2, 3}}) {
        const Transversality tv = transversality(j, k);
        const double rel =
            std::abs(tv.numeric - tv.closed_form) / std::abs(tv.closed_form);
        ck.require(rel <= 1e-3, "(" + std::to_string(j) + "," +
                                    std::to_string(k) + ") rel err " +
                                    fmt(rel));
        note << "(" << j << "," << k << "):" << fmt(rel) << " ";
    }
    return {5, "transversality-constants", ck.ok(), 0.0, 60.0,
            ck.message(note.str())};
}

// --- criterion 6: root solve + classification at a = 0.5 --------------

inline CriterionResult c6_root_solve(Context& ctx) {
    Check ck;
    const EllipsoidGeometry g(0.5);
    const int n = 2000;
    const double s_hi = 0.95;

    // Grid-scan oracle: locate sign changes of f_1 on (0, 0.95], then
    // squeeze the bracket by plain bisection, independent of Brent.
    std::vector<std::pair<double, double>> brackets;
    double prev_s = s_hi / n, prev_f = shooting_value(g, prev_s, 1).f;
    for (int i = 2; i <= n; ++i) {
        const double s = s_hi * i / n;
        const double f = shooting_value(g, s, 1).f;
        if (prev_f * f < 0.0) brackets.push_back({prev_s, s});
        prev_s = s;
        prev_f = f;
    }
    ck.require(brackets.size() == 1,
               "expected exactly 1 nontrivial root bracket, got " +
                   std::to_string(brackets.size()));
    if (!brackets.empty()) {
        auto [lo, hi] = brackets.front();
        double flo = shooting_value(g, lo, 1).f;
        for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = shooting_value(g, mid, 1).f;
            if (flo * fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        const double s_bisect = 0.5 * (lo + hi);

        const ClosedGeodesicRoot root =
            find_closed_geodesic(g, 1, brackets.front().first,
                                 brackets.front().second);
        ck.require(root.converged, "Brent root did not converge");
        ck.require(std::abs(root.result.f) <= 1e-10,
                   "|f| at root = " + fmt(std::abs(root.result.f)));
        ck.require(std::abs(root.result.s - s_bisect) <= 1e-8,
                   "bisection oracle and Brent disagree by " +
                       fmt(std::abs(root.result.s - s_bisect)));

        const GeodesicClassification cl = classify(g, root.result.s, 1);
        ck.require(cl.closed && cl.simple, "root not simple/closed");
        ck.require(cl.winding == 1, "winding != 1");
        ck.require(cl.equator_crossings == 2,
                   "equator crossings = " +
                       std::to_string(cl.equator_crossings));
        ck.require(cl.diameter_self_crossings == 0,
                   "diameter self-crossings = " +
                       std::to_string(cl.diameter_self_crossings));
        const Trajectory closed = integrate_closed(g, root.result.s, 1);
        const EmbeddingReport emb = embedding_check(g, closed);
        ck.require(emb.embedded, "planar curve not embedded");

        ctx.b11_root = root;
        ctx.extra_points.push_back({0.5, root.result.s});
        return {6, "root-solve-and-classify", ck.ok(), 0.0, 30.0,
                ck.message("root s = " + fmt(root.result.s) +
                           ", |f| = " + fmt(std::abs(root.result.f)) +
                           ", simple embedded circle")};
    }
    return {6, "root-solve-and-classify", false, 0.0, 30.0,
            ck.message("")};
}

// --- criterion 7: global continuation of the (1,1) branch -------------

inline ContinuationConfig b11_config() {
    ContinuationConfig cfg;
    cfg.ds0 = 1e-3;
    cfg.ds_max = 4e-3; // guarantees well over 100 points to a = 0.25
    cfg.a_min = 0.25;
    cfg.a_max = 20.0;
    cfg.max_points = 1500;
    return cfg;
}

inline CriterionResult c7_branch_b11(Context& ctx) {
    Check ck;
    const ContinuationConfig cfg = b11_config();
    Branch plus, minus;
    if (ctx.threads > 1) {
        auto fp = std::async(std::launch::async,
                             [&]() { return trace_branch(1, 1, +1, cfg); });
        minus = trace_branch(1, 1, -1, cfg);
        plus = fp.get();
    } else {
        plus = trace_branch(1, 1, +1, cfg);
        minus = trace_branch(1, 1, -1, cfg);
    }
    for (const Branch* b : {&plus, &minus}) {
        const std::string side = b->direction > 0 ? "plus" : "minus";
        ck.require(b->termination == BranchTermination::reached_a_min,
                   side + " side stopped early: " + b->note);
        ck.require(int(b->points.size()) >= 100,
                   side + " side has only " +
                       std::to_string(b->points.size()) + " points");
        double worst_f = 0.0;
        bool inv_ok = true, a_ok = true, sign_ok = true;
        for (const auto& p : b->points) {
            worst_f = std::max(worst_f, p.f_residual);
            inv_ok = inv_ok && p.winding == 1 && p.equator_crossings == 2 &&
                     p.diameter_self_crossings == 0;
            a_ok = a_ok && p.a <= 1.0;
            sign_ok = sign_ok && (p.s * b->direction > 0.0);
        }
        ck.require(worst_f <= 1e-8,
                   side + " worst |f| = " + fmt(worst_f));
        ck.require(inv_ok, side + " invariants drifted from (1, 2, 0)");
        ck.require(a_ok, side + " has a point with a > 1");
        ck.require(sign_ok, side + " has a point with wrong s sign");
    }
    ctx.b11_plus = std::move(plus);
    ctx.b11_minus = std::move(minus);
    return {7, "branch-global-continuation", ck.ok(), 0.0, 300.0,
            ck.message("both sides reached a <= 0.25: " +
                       std::to_string(ctx.b11_plus.points.size()) + "+" +
                       std::to_string(ctx.b11_minus.points.size()) +
                       " points, invariants (1,2,0) throughout")};
}

// --- criterion 8: the (1,2) branch and its self-intersection ----------

inline CriterionResult c8_branch_b12(Context& ctx) {
    Check ck;
    ContinuationConfig cfg;
    cfg.ds0 = 1e-3;
    cfg.ds_max = 5e-3;
    cfg.a_min = 0.2;
    cfg.a_max = 20.0;
    cfg.max_points = 400;
    Branch br = trace_branch(1, 2, +1, cfg);
    ck.require(br.termination == BranchTermination::reached_a_min ||
                   br.termination == BranchTermination::step_limit,
               "trace failed: " + br.note);
    ck.require(int(br.points.size()) >= 30,
               "only " + std::to_string(br.points.size()) + " points");
    bool inv_ok = true;
    double worst_f = 0.0;
    for (const auto& p : br.points) {
        inv_ok = inv_ok && p.winding == 2 && p.equator_crossings == 2 &&
                 p.diameter_self_crossings == 1;
        worst_f = std::max(worst_f, p.f_residual);
    }
    ck.require(inv_ok, "invariants drifted from (2, 2, 1)");
    ck.require(worst_f <= 1e-8, "worst |f| = " + fmt(worst_f));

    // Sample three points along the branch: primitive double-winding
    // curves whose single self-crossing sits on the θ ∈ {0, π} diameter.
    if (!br.points.empty()) {
        const std::size_t ids[3] = {0, br.points.size() / 2,
                                    br.points.size() - 1};
        double worst_y = 0.0;
        for (std::size_t idx : ids) {
            const BranchPoint& p = br.points[idx];
            const EllipsoidGeometry g(p.a);
            const GeodesicClassification cl = classify(g, p.s, 2);
            ck.require(cl.primitive && !cl.degenerate,
                       "sample at a=" + fmt(p.a) + " not primitive");
            const Trajectory closed = integrate_closed(g, p.s, 2);
            const EmbeddingReport emb = embedding_check(g, closed);
            ck.require(emb.crossings.size() == 1,
                       "sample at a=" + fmt(p.a) + " has " +
                           std::to_string(emb.crossings.size()) +
                           " planar crossings (want 1)");
            for (const auto& c : emb.crossings)
                worst_y = std::max(worst_y, std::abs(c.y));
        }
        ck.require(worst_y <= 1e-8,
                   "crossing strays off the diameter: |y| = " + fmt(worst_y));
    }
    ctx.b12_plus = std::move(br);
    return {8, "branch-self-intersection", ck.ok(), 0.0, 300.0,
            ck.message(std::to_string(ctx.b12_plus.points.size()) +
                       " points, invariants (2,2,1), single crossing on "
                       "the diameter")};
}

// --- criterion 9: the root involution and its parity ------------------

inline CriterionResult c9_involution(Context& ctx) {
    Check ck;
    // Odd j (the (1,1) branch): the involution flips the sign of s.
    const ClosedGeodesicRoot& root = b11_root(ctx);
    const EllipsoidGeometry g05(0.5);
    const ReflectedRoot r1 = reflect_root(g05, root.result.s, 1);
    ck.require(r1.s * root.result.s < 0.0,
               "odd-j involution failed to swap the sign of s");
    ck.require(std::abs(r1.check.f) <= 1e-8,
               "involution image is not a root: |f| = " +
                   fmt(std::abs(r1.check.f)));
    const ReflectedRoot r1b = reflect_root(g05, r1.s, 1);
    ck.require(std::abs(r1b.s - root.result.s) <= 1e-8,
               "involution squared != identity on the (1,1) root");

    // Even j (the (2,3) branch): sign preserved.  Walk a few continuation
    // steps from the instant to get clear of s = 0, then reflect.
    ContinuationConfig cfg;
    cfg.ds0 = 1e-3;
    cfg.ds_max = 5e-3;
    cfg.max_points = 40;
    cfg.a_min = 0.05;
    Branch b23 = trace_branch(2, 3, +1, cfg);
    ck.require(b23.termination == BranchTermination::step_limit &&
                   !b23.points.empty(),
               "(2,3) trace failed: " + b23.note);
    if (!b23.points.empty()) {
        const BranchPoint& p = b23.points.back();
        const EllipsoidGeometry g(p.a);
        const ReflectedRoot r2 = reflect_root(g, p.s, 3);
        ck.require(r2.s * p.s > 0.0,
                   "even-j involution flipped the sign of s");
        ck.require(std::abs(r2.check.f) <= 1e-8,
                   "even-j involution image is not a root: |f| = " +
                       fmt(std::abs(r2.check.f)));
        const ReflectedRoot r2b = reflect_root(g, r2.s, 3);
        ck.require(std::abs(r2b.s - p.s) <= 1e-8,
                   "involution squared != identity on the (2,3) root");
    }
    ctx.b23_plus = std::move(b23);
    return {9, "root-involution-parity", ck.ok(), 0.0, 60.0,
            ck.message("sign swapped for (1,1), preserved for (2,3), "
                       "squares to identity")};
}

// --- criterion 10: lift fidelity ---------------------------------------

inline CriterionResult c10_lift(Context& ctx) {
    Check ck;
    for (double a : {0.5, 1.0, 2.0}) {
        const EllipsoidGeometry g(a);
        const Trajectory tr = integrate_closed(g, 0.0, 1);
        const TorusMesh mesh = lift(g, tr);
        double worst = 0.0;
        for (const auto& v : mesh.vertices) {
            const double z2 = (v[0] * v[0] + v[1] * v[1]) / (a * a);
            const double w2 = v[2] * v[2] + v[3] * v[3];
            worst = std::max({worst, std::abs(z2 - 0.5),
                              std::abs(w2 - 0.5)});
        }
        ck.require(worst <= 1e-10,
                   "equatorial mesh at a=" + fmt(a) +
                       " off the half-radii by " + fmt(worst));
        ck.require(mesh.max_residual <= 1e-10,
                   "mesh leaves the ellipsoid by " +
                       fmt(mesh.max_residual));
        const double area = torus_area(g, tr);
        ck.require(std::abs(area - 2.0 * kPi * kPi * a) <= 1e-9,
                   "equatorial area at a=" + fmt(a) + " off by " +
                       fmt(std::abs(area - 2.0 * kPi * kPi * a)));
    }
    const ClosedGeodesicRoot& root = b11_root(ctx);
    const EllipsoidGeometry g(0.5);
    const Trajectory tr = integrate_closed(g, root.result.s, 1);
    const double smooth = torus_area(g, tr);
    const TorusMesh mesh = lift(g, tr);
    const double flat = mesh_area(mesh);
    ck.require(std::abs(flat - smooth) <= 5e-3 * smooth,
               "mesh area " + fmt(flat) + " vs smooth " + fmt(smooth));
    return {10, "lift-fidelity", ck.ok(), 0.0, 60.0,
            ck.message("equatorial tori exact to 1e-10/1e-9; branch mesh "
                       "area within 0.5%")};
}

// --- criterion 11: properness guard ------------------------------------

inline CriterionResult c11_properness(Context& ctx) {
    Check ck;
    std::size_t n = 0;
    auto scan = [&](const Branch& b) {
        for (const auto& p : b.points) {
            ++n;
            ck.require(!(std::abs(p.s) > 0.999 && p.a >= 0.1 && p.a <= 10.0),
                       "near-boundary point at a=" + fmt(p.a) +
                           ", s=" + fmt(p.s));
        }
    };
    scan(ctx.b11_plus);
    scan(ctx.b11_minus);
    scan(ctx.b12_plus);
    scan(ctx.b23_plus);
    for (const auto& [a, s] : ctx.extra_points) {
        ++n;
        ck.require(!(std::abs(s) > 0.999 && a >= 0.1 && a <= 10.0),
                   "near-boundary root at a=" + fmt(a) + ", s=" + fmt(s));
    }
    return {11, "properness-guard", ck.ok(), 0.0, 10.0,
            ck.message(std::to_string(n) +
                       " computed points, none with |s| > 0.999 inside "
                       "a in [0.1, 10]")};
}

} // namespace detail

inline std::vector<CriterionResult> run_all(const Options& opt = {}) {
    detail::Context ctx;
    ctx.seed = opt.seed;
    const unsigned hw = std::thread::hardware_concurrency();
    ctx.threads = opt.threads > 0 ? opt.threads
                                  : int(std::min(8u, hw ? hw : 1u));

    using Fn = std::function<CriterionResult(detail::Context&)>;
    const std::vector<Fn> criteria = {
        detail::c1_instants,   detail::c2_profile,
        detail::c3_conservation, detail::c4_slope_grid,
        detail::c5_transversality, detail::c6_root_solve,
        detail::c7_branch_b11, detail::c8_branch_b12,
        detail::c9_involution, detail::c10_lift,
        detail::c11_properness,
    };
    std::vector<CriterionResult> out;
    for (const Fn& fn : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(ctx);
        } catch (const std::exception& e) {
            r.id = int(out.size()) + 1;
            r.name = "criterion-" + std::to_string(r.id);
            r.pass = false;
            r.budget = 0.0;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        if (r.budget > 0.0 && r.seconds > r.budget) {
            r.pass = false;
            r.detail += " [over time budget " +
                        detail::fmt(r.budget) + " s]";
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

inline void print_results(std::ostream& os,
                          const std::vector<CriterionResult>& rs) {
    int npass = 0;
    for (const auto& r : rs) {
        npass += r.pass ? 1 : 0;
        char line[64];
        std::snprintf(line, sizeof line, "[%2d/11] %s  %-28s %7.2f s  ",
                      r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                      r.seconds);
        os << line << r.detail << "\n";
    }
    os << "acceptance: " << npass << "/" << rs.size() << " criteria passed\n";
}

} // namespace geotori::selftest
