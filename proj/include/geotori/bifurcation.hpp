// bifurcation.hpp: where new closed geodesics are born and how their
// branches run through the (a, s) strip.
//
// Along the trivial branch (the equatorial circle, s = 0) the linearized
// shooting slope −β'(0) ω(a) sin(ω(a) k π) changes sign exactly at the
// axis ratios with ω(a) = j/k, i.e.
//
//     a_{j,k} = (j/k) / √(4 − (j/k)²),   1 ≤ j ≤ 2k−1,  gcd(j, k) = 1.
//
// These are the bifurcation instants.  The matching second-variation
// ("Jacobi") eigenvalues of the k-fold circle are
//
//     λ_{k,l}(j, m) = 2 (j²/(k² a²) + m²/l²) − 8/(a²+1),
//
// and λ_{k,1}(j, 0) vanishes precisely at a = a_{j,k}: the shooting and
// spectral pictures mark the same instants.
//
// From each instant a branch of nontrivial roots is traced by
// pseudo-arclength continuation in x = (a, s): secant-tangent predictor,
// chord-Newton corrector on { f_k(x) = 0, T·(x − x_prev) = ds }, step
// halving on corrector failure, and a re-classification guard that refuses
// to silently hop onto a different branch.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "geotori/metric_profile.hpp"
#include "geotori/shooting.hpp"

namespace geotori {

struct BifurcationInstant {
    int j, k;
    double a;
};

// All instants with winding k <= k_max, ascending in a.  Only coprime
// (j, k) appear: non-coprime labels repeat the primitive instant.
inline std::vector<BifurcationInstant> bifurcation_instants(int k_max) {
    if (k_max < 1)
        throw std::invalid_argument("bifurcation_instants: k_max >= 1");
    std::vector<BifurcationInstant> out;
    for (int k = 1; k <= k_max; ++k)
        for (int j = 1; j <= 2 * k - 1; ++j)
            if (std::gcd(j, k) == 1)
                out.push_back({j, k, critical_axis_ratio(j, k)});
    std::sort(out.begin(), out.end(),
              [](const BifurcationInstant& x, const BifurcationInstant& y) {
                  return x.a < y.a;
              });
    return out;
}

// Second-variation eigenvalue of the (k, l)-fold equatorial torus on the
// (j, m) Fourier mode.
inline double jacobi_eigenvalue(double a, int k, int l, int j, int m) {
    if (!(a > 0.0))
        throw std::invalid_argument("jacobi_eigenvalue: a must be > 0");
    if (k < 1 || l < 1 || j < 0 || m < 0)
        throw std::invalid_argument(
            "jacobi_eigenvalue: need k, l >= 1 and j, m >= 0");
    const double jj = double(j) / (double(k) * a);
    const double mm = double(m) / double(l);
    return 2.0 * (jj * jj + mm * mm) - 8.0 / (a * a + 1.0);
}

struct JacobiModeTable {
    double a;
    struct Entry {
        int k, l, j, m;
        double lambda;
    };
    std::vector<Entry> entries;
};

inline JacobiModeTable jacobi_mode_table(double a, int k_max, int l_max,
                                         int j_max, int m_max) {
    JacobiModeTable tab{a, {}};
    for (int k = 1; k <= k_max; ++k)
        for (int l = 1; l <= l_max; ++l)
            for (int j = 0; j <= j_max; ++j)
                for (int m = 0; m <= m_max; ++m)
                    tab.entries.push_back(
                        {k, l, j, m, jacobi_eigenvalue(a, k, l, j, m)});
    return tab;
}

struct ContinuationConfig {
    double ds0 = 1e-3;    // first step away from the instant
    double ds_max = 0.05; // arclength step cap
    double ds_min = 1e-8; // give up below this
    double a_min = 0.05, a_max = 20.0;
    int max_points = 5000;
    int max_newton = 8;
    double newton_tol = 1e-10; // |f_k| at accepted points
    double h_a = 1e-5, h_s = 1e-6; // corrector Jacobian FD steps
    double quad_tol = 1e-12;
    ShootingConfig shooting; // ODE tolerances for every f_k evaluation
};

enum class BranchTermination {
    reached_a_min,
    reached_a_max,
    step_limit,
    failure,
};

inline const char* to_string(BranchTermination t) {
    switch (t) {
    case BranchTermination::reached_a_min: return "reached_a_min";
    case BranchTermination::reached_a_max: return "reached_a_max";
    case BranchTermination::step_limit: return "step_limit";
    case BranchTermination::failure: return "failure";
    }
    return "?";
}

struct BranchPoint {
    double a, s;
    double ell;        // ℓ_k (half period)
    double f_residual; // |f_k| actually achieved
    int winding;
    int equator_crossings;
    int diameter_self_crossings;
};

struct Branch {
    int j = 0, k = 0;
    double a_origin = 0.0; // critical_axis_ratio(j, k)
    int direction = +1;    // sign of s on this side of the instant
    std::vector<BranchPoint> points;
    BranchTermination termination = BranchTermination::failure;
    std::string note;
};

namespace detail {

// Continuation re-evaluates f_k at nearby axis ratios over and over; the
// profile table is the expensive part, so keep a small MRU pool keyed on
// exact a (FD probe values recur bit-identically within a corrector).
class GeometryCache {
public:
    explicit GeometryCache(double quad_tol, std::size_t capacity = 8)
        : quad_tol_(quad_tol), capacity_(capacity) {}

    const EllipsoidGeometry& at(double a) {
        for (auto it = pool_.begin(); it != pool_.end(); ++it) {
            if (it->first == a) {
                pool_.splice(pool_.begin(), pool_, it);
                return pool_.front().second;
            }
        }
        pool_.emplace_front(a, EllipsoidGeometry(a, quad_tol_));
        if (pool_.size() > capacity_) pool_.pop_back();
        return pool_.front().second;
    }

private:
    double quad_tol_;
    std::size_t capacity_;
    std::list<std::pair<double, EllipsoidGeometry>> pool_;
};

} // namespace detail

// Trace one side (direction = sign of s) of the branch born at the
// (j, k) instant until it leaves [a_min, a_max], exhausts max_points, or
// fails.  Every accepted point satisfies |f_k| <= newton_tol and carries
// the discrete invariants; any invariant change aborts with `failure`
// rather than silently jumping branches.
inline Branch trace_branch(int j, int k, int direction,
                           const ContinuationConfig& cfg = {}) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("trace_branch: direction must be +1/-1");
    Branch br;
    br.j = j;
    br.k = k;
    br.a_origin = critical_axis_ratio(j, k);
    br.direction = direction;
    if (!(br.a_origin > cfg.a_min) || !(br.a_origin < cfg.a_max)) {
        br.termination = BranchTermination::failure;
        br.note = "instant lies outside [a_min, a_max]";
        return br;
    }

    detail::GeometryCache cache(cfg.quad_tol);
    auto f_of = [&](double a, double s) {
        return shooting_value(cache.at(a), s, k, cfg.shooting).f;
    };

    // --- first point: 1-d Newton in a at fixed s = direction * ds0.
    // Near the instant f(a, s) ≈ M (a − a_jk) s, so the a-slope is small
    // but nonzero; FD with the configured h_a captures it fine.
    const double s1 = direction * cfg.ds0;
    double a1 = br.a_origin;
    bool ok = false;
    for (int it = 0; it < cfg.max_newton + 4; ++it) {
        const double fv = f_of(a1, s1);
        if (std::abs(fv) <= cfg.newton_tol) {
            ok = true;
            break;
        }
        const double da =
            (f_of(a1 + cfg.h_a, s1) - f_of(a1 - cfg.h_a, s1)) /
            (2.0 * cfg.h_a);
        if (!(std::abs(da) > 0.0)) break;
        a1 -= fv / da;
    }
    if (!ok) {
        br.termination = BranchTermination::failure;
        br.note = "first point Newton failed";
        return br;
    }

    auto record = [&](double a, double s,
                      const GeodesicClassification& cl, double ell,
                      double fres) {
        br.points.push_back({a, s, ell, fres, cl.winding,
                             cl.equator_crossings,
                             cl.diameter_self_crossings});
    };

    auto classify_at = [&](double a, double s) {
        return classify(cache.at(a), s, k, cfg.shooting);
    };

    GeodesicClassification cl0 = classify_at(a1, s1);
    {
        const ShootingResult r0 = shooting_value(cache.at(a1), s1, k,
                                                 cfg.shooting);
        record(a1, s1, cl0, r0.ell, std::abs(r0.f));
    }

    std::array<double, 2> x_prev{br.a_origin, 0.0};
    std::array<double, 2> x{a1, s1};
    double ds = cfg.ds0;

    while (true) {
        if (int(br.points.size()) >= cfg.max_points) {
            br.termination = BranchTermination::step_limit;
            br.note = "max_points reached";
            return br;
        }
        if (x[0] <= cfg.a_min) {
            br.termination = BranchTermination::reached_a_min;
            br.note = "left the strip through a_min";
            return br;
        }
        if (x[0] >= cfg.a_max) {
            br.termination = BranchTermination::reached_a_max;
            br.note = "left the strip through a_max";
            return br;
        }

        // Secant tangent; for the very first step the previous point is
        // the instant itself.
        std::array<double, 2> T{x[0] - x_prev[0], x[1] - x_prev[1]};
        const double tn = std::hypot(T[0], T[1]);
        T[0] /= tn;
        T[1] /= tn;

        bool accepted = false;
        while (!accepted) {
            std::array<double, 2> xn{x[0] + ds * T[0], x[1] + ds * T[1]};
            bool converged = false;
            int used = 0;
            // Numerical trouble while probing (boundary guard band, drift
            // abort, a <= 0) just means the step was too ambitious.
            try {
                // Chord Newton: Jacobian at the predictor only.
                const double dfa =
                    (f_of(xn[0] + cfg.h_a, xn[1]) -
                     f_of(xn[0] - cfg.h_a, xn[1])) / (2.0 * cfg.h_a);
                const double dfs =
                    (f_of(xn[0], xn[1] + cfg.h_s) -
                     f_of(xn[0], xn[1] - cfg.h_s)) / (2.0 * cfg.h_s);
                const double det = dfa * T[1] - dfs * T[0];
                if (std::abs(det) > 1e-14) {
                    for (int it = 0; it < cfg.max_newton; ++it) {
                        used = it + 1;
                        const double fv = f_of(xn[0], xn[1]);
                        const double g2 = T[0] * (xn[0] - x[0]) +
                                          T[1] * (xn[1] - x[1]) - ds;
                        if (std::abs(fv) <= cfg.newton_tol &&
                            std::abs(g2) <= 1e-11) {
                            converged = true;
                            break;
                        }
                        // J = [dfa dfs; T0 T1], solve J d = -(fv, g2).
                        const double d0 = (-fv * T[1] + g2 * dfs) / det;
                        const double d1 = (-dfa * g2 + T[0] * fv) / det;
                        if (!std::isfinite(d0) || !std::isfinite(d1) ||
                            std::hypot(d0, d1) > 4.0 * ds + 1e-3)
                            break;
                        xn[0] += d0;
                        xn[1] += d1;
                    }
                }
            } catch (const SingularBoundaryError&) {
                converged = false;
            } catch (const IntegrationError&) {
                converged = false;
            } catch (const std::invalid_argument&) {
                converged = false; // e.g. Newton pushed a or s out of range
            }

            if (converged && std::abs(xn[1]) < 1.0 - 1e-6) {
                const GeodesicClassification cl = classify_at(xn[0], xn[1]);
                if (cl.winding != cl0.winding ||
                    cl.equator_crossings != cl0.equator_crossings ||
                    cl.diameter_self_crossings !=
                        cl0.diameter_self_crossings) {
                    br.termination = BranchTermination::failure;
                    br.note =
                        "invariant change at a = " + std::to_string(xn[0]) +
                        ", s = " + std::to_string(xn[1]) +
                        " (branch-jump guard)";
                    return br;
                }
                const ShootingResult rr =
                    shooting_value(cache.at(xn[0]), xn[1], k, cfg.shooting);
                record(xn[0], xn[1], cl, rr.ell, std::abs(rr.f));
                x_prev = x;
                x = xn;
                accepted = true;
                if (used <= 3) ds = std::min(ds * 1.4, cfg.ds_max);
            } else {
                ds *= 0.5;
                if (ds < cfg.ds_min) {
                    br.termination = BranchTermination::failure;
                    br.note = "step size underflow in corrector";
                    return br;
                }
            }
        }
    }
}

struct ReflectedRoot {
    double s;             // ι_k image of the input root parameter
    ShootingResult check; // shooting residual at the image (should close)
};

// The root involution: a closed root launched at β(s) arrives at the
// mirrored turning circle ρ(ℓ_k), which is itself a launch radius; ι_k
// sends s to that parameter.  Odd j swaps the sign of s, even j preserves
// it, and ι_k ∘ ι_k = id on roots.
inline ReflectedRoot reflect_root(const EllipsoidGeometry& g, double s_root,
                                  int k, const ShootingConfig& cfg = {}) {
    const Trajectory tr = integrate(g, s_root, k, cfg.ode);
    const double s_image = g.start_param(tr.crossing(k).state.rho);
    return {s_image, shooting_value(g, s_image, k, cfg)};
}

struct DiagramBranch {
    int j, k;
    Branch plus, minus; // the two s-sides of the instant
};

struct Diagram {
    std::vector<DiagramBranch> branches;
    // Minimum (a, s) distance between points of branches with distinct
    // (j, k); the diagram is trustworthy when this clears the step size.
    double min_branch_separation = 0.0;
};

inline Diagram compute_diagram(const std::vector<std::pair<int, int>>& labels,
                               const ContinuationConfig& cfg = {},
                               int threads = 1) {
    Diagram dg;
    dg.branches.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        dg.branches[i].j = labels[i].first;
        dg.branches[i].k = labels[i].second;
    }

    // Fan the 2·n traces out over a fixed-size worker pool; work item
    // order is immaterial to the result, so the diagram is deterministic
    // for any thread count.
    std::vector<std::pair<std::size_t, int>> jobs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        jobs.push_back({i, +1});
        jobs.push_back({i, -1});
    }
    const int nw = std::max(1, std::min<int>(threads, int(jobs.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(jobs.size());
    auto worker = [&]() {
        for (;;) {
            const std::size_t id = next.fetch_add(1);
            if (id >= jobs.size()) return;
            const auto [bi, dir] = jobs[id];
            try {
                Branch b = trace_branch(dg.branches[bi].j,
                                        dg.branches[bi].k, dir, cfg);
                (dir > 0 ? dg.branches[bi].plus : dg.branches[bi].minus) =
                    std::move(b);
            } catch (const std::exception& e) {
                errors[id] = e.what();
            }
        }
    };
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw std::runtime_error("compute_diagram: branch trace threw: " +
                                     e);

    // Pairwise separation between distinct labels.
    double sep = std::numeric_limits<double>::infinity();
    auto each_point = [](const DiagramBranch& db, auto&& fn) {
        for (const auto& p : db.plus.points) fn(p);
        for (const auto& p : db.minus.points) fn(p);
    };
    for (std::size_t i = 0; i < dg.branches.size(); ++i)
        for (std::size_t l = i + 1; l < dg.branches.size(); ++l)
            each_point(dg.branches[i], [&](const BranchPoint& p) {
                each_point(dg.branches[l], [&](const BranchPoint& q) {
                    sep = std::min(sep, std::hypot(p.a - q.a, p.s - q.s));
                });
            });
    dg.min_branch_separation = sep;
    return dg;
}

} // namespace geotori
