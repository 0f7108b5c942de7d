// geotori: batch front-end for the geodesic-torus toolkit.
//
// Subcommands:
//   instants  enumerate critical axis ratios a_{j,k}
//   shoot     integrate one launch and report the shooting value
//   solve     scan + refine closed-geodesic roots at fixed a
//   branch    continue one bifurcation branch in both s-directions
//   diagram   trace every branch with k <= kmax and merge the results
//   lift      lift a closed root to a torus mesh in R^4
//   selftest  run the acceptance suite
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.
// Flags override a TOML-style --config file, which overrides defaults;
// the resolved values are echoed into every output file.

#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "geotori/geotori.hpp"

namespace fs = std::filesystem;
using namespace geotori;
using io::ordered_json;

namespace {

struct GlobalOpts {
    double quad_tol = 1e-12;
    double ode_rtol = 1e-11;
    double ode_atol = 1e-13;
    double root_tol = 1e-10;
    std::string out = ".";
    std::string format; // empty = per-command default
    int threads = 0;    // 0 = hardware concurrency (capped)
    unsigned seed = 20260816u;
};

// Continuation parameters shared by `branch` and `diagram`.  The command
// line defaults to a_min = 0.25 (a comfortable floor for desk-scale
// runs); the library itself allows continuing much further down.
struct BranchOpts {
    double a_min = 0.25;
    double a_max = 20.0;
    double ds0 = 1e-3;
    double ds_max = 0.05;
    double ds_min = 1e-8;
    int max_points = 5000;
    double newton_tol = 1e-10;
};

IntegratorConfig ode_config(const GlobalOpts& g) {
    IntegratorConfig ode;
    ode.rtol = g.ode_rtol;
    ode.atol = g.ode_atol;
    return ode;
}

ShootingConfig shooting_config(const GlobalOpts& g) {
    ShootingConfig sc;
    sc.ode = ode_config(g);
    sc.root_ftol = g.root_tol;
    return sc;
}

ContinuationConfig continuation_config(const GlobalOpts& g,
                                       const BranchOpts& b) {
    ContinuationConfig cc;
    cc.a_min = b.a_min;
    cc.a_max = b.a_max;
    cc.ds0 = b.ds0;
    cc.ds_max = b.ds_max;
    cc.ds_min = b.ds_min;
    cc.max_points = b.max_points;
    cc.newton_tol = b.newton_tol;
    cc.quad_tol = g.quad_tol;
    cc.shooting = shooting_config(g);
    return cc;
}

int resolve_threads(const GlobalOpts& g) {
    if (g.threads > 0) return g.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return int(std::min(8u, hw ? hw : 1u));
}

// Pick the output format: the per-command default when the flag was not
// given, otherwise the flag, validated against what the command writes.
std::string resolve_format(const GlobalOpts& g, const std::string& dflt,
                           std::initializer_list<const char*> allowed) {
    const std::string fmt = g.format.empty() ? dflt : g.format;
    for (const char* ok : allowed)
        if (fmt == ok) return fmt;
    std::string list;
    for (const char* ok : allowed) {
        if (!list.empty()) list += ", ";
        list += ok;
    }
    throw std::invalid_argument("--format " + fmt +
                                " is not supported here (use: " + list + ")");
}

ordered_json base_provenance(const GlobalOpts& g, const std::string& command,
                             const std::string& format) {
    ordered_json p;
    p["command"] = command;
    p["format"] = format;
    p["out"] = g.out;
    p["quad_tol"] = g.quad_tol;
    p["ode_rtol"] = g.ode_rtol;
    p["ode_atol"] = g.ode_atol;
    p["root_tol"] = g.root_tol;
    p["threads"] = g.threads;
    p["seed"] = g.seed;
    return p;
}

std::string fd(double v) { return io::format_double(v); }

// ---------------------------------------------------------------- instants

int cmd_instants(const GlobalOpts& g, int kmax) {
    const std::string fmt = resolve_format(g, "csv", {"csv", "json"});
    const auto inst = bifurcation_instants(kmax);
    ordered_json prov = base_provenance(g, "instants", fmt);
    prov["kmax"] = kmax;
    const fs::path dir(g.out);
    fs::path file;
    if (fmt == "csv") {
        file = dir / "instants.csv";
        io::write_instants_csv(file, inst, &prov);
    } else {
        file = dir / "instants.json";
        ordered_json j;
        j["instants"] = io::instants_json(inst);
        j["provenance"] = prov;
        io::write_json(file, j);
    }
    std::cout << inst.size() << " instants for k <= " << kmax << " -> "
              << file.string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- shoot

int cmd_shoot(const GlobalOpts& g, double a, double s, int k) {
    const std::string fmt = resolve_format(g, "csv", {"csv"});
    const EllipsoidGeometry geom(a, g.quad_tol);
    const Trajectory tr = integrate(geom, s, k, ode_config(g));
    const CrossingEvent& ev = tr.crossing(k);

    ordered_json prov = base_provenance(g, "shoot", fmt);
    prov["a"] = a;
    prov["s"] = s;
    prov["k"] = k;
    const fs::path dir(g.out);
    io::write_trajectory_csv(dir / "trajectory.csv", geom, tr, &prov);

    ordered_json diag;
    diag["a"] = a;
    diag["s"] = s;
    diag["k"] = k;
    diag["f"] = ev.state.rho_dot;
    diag["ell_k"] = ev.t;
    diag["clairaut"] = tr.clairaut0();
    diag["energy"] = tr.energy0();
    diag["max_clairaut_drift"] = tr.max_clairaut_drift();
    diag["max_energy_drift"] = tr.max_energy_drift();
    diag["provenance"] = prov;
    io::write_json(dir / "shoot.json", diag);

    std::cout << "f_" << k << "(" << fd(a) << ", " << fd(s)
              << ") = " << fd(ev.state.rho_dot) << "\n"
              << "ell_" << k << " = " << fd(ev.t) << "\n"
              << "max drift (clairaut, energy) = ("
              << fd(tr.max_clairaut_drift()) << ", "
              << fd(tr.max_energy_drift()) << ")\n";
    return 0;
}

// ------------------------------------------------------------------- solve

ordered_json classification_json(const GeodesicClassification& cl) {
    ordered_json c;
    c["closed"] = cl.closed;
    c["simple"] = cl.simple;
    c["primitive"] = cl.primitive;
    c["degenerate"] = cl.degenerate;
    c["winding"] = cl.winding;
    c["clifford_intersections"] = cl.equator_crossings;
    c["self_intersections"] = cl.diameter_self_crossings;
    return c;
}

int cmd_solve(const GlobalOpts& g, double a, int k, double s_lo, double s_hi,
              int grid) {
    const std::string fmt = resolve_format(g, "json", {"json"});
    if (!(s_lo < s_hi) || std::abs(s_lo) >= 1.0 || std::abs(s_hi) >= 1.0)
        throw std::invalid_argument(
            "solve: need -1 < s-min < s-max < 1");
    if (grid < 2) throw std::invalid_argument("solve: --grid must be >= 2");

    const EllipsoidGeometry geom(a, g.quad_tol);
    const ShootingConfig sc = shooting_config(g);

    // Scan for sign changes of f_k, then polish each bracket.
    std::vector<std::pair<double, double>> brackets;
    double prev_s = s_lo, prev_f = shooting_value(geom, s_lo, k, sc).f;
    for (int i = 1; i <= grid; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / grid;
        const double f = shooting_value(geom, s, k, sc).f;
        if (prev_f == 0.0)
            brackets.push_back({prev_s, prev_s});
        else if (prev_f * f < 0.0)
            brackets.push_back({prev_s, s});
        prev_s = s;
        prev_f = f;
    }

    ordered_json roots = ordered_json::array();
    bool all_converged = true;
    for (const auto& [lo, hi] : brackets) {
        const ClosedGeodesicRoot root =
            lo == hi ? ClosedGeodesicRoot{shooting_value(geom, lo, k, sc), 0,
                                          0.0, true}
                     : find_closed_geodesic(geom, k, lo, hi, sc);
        all_converged = all_converged && root.converged;
        const GeodesicClassification cl = classify(geom, root.result.s, k, sc);
        const ReflectedRoot refl = reflect_root(geom, root.result.s, k, sc);
        ordered_json r;
        r["s"] = root.result.s;
        r["f"] = root.result.f;
        r["ell_k"] = root.result.ell;
        r["iterations"] = root.iterations;
        r["bracket_width"] = root.bracket_width;
        r["converged"] = root.converged;
        r["classification"] = classification_json(cl);
        r["iota_image_s"] = refl.s;
        r["iota_image_f"] = refl.check.f;
        roots.push_back(std::move(r));
        std::cout << "root s = " << fd(root.result.s)
                  << "  f = " << fd(root.result.f)
                  << "  ell_" << k << " = " << fd(root.result.ell)
                  << (root.converged ? "" : "  [NOT CONVERGED]") << "\n";
    }
    if (brackets.empty())
        std::cout << "no sign change of f_" << k << " on [" << fd(s_lo)
                  << ", " << fd(s_hi) << "] (" << grid << " cells)\n";

    ordered_json prov = base_provenance(g, "solve", fmt);
    prov["a"] = a;
    prov["k"] = k;
    prov["s_min"] = s_lo;
    prov["s_max"] = s_hi;
    prov["grid"] = grid;
    ordered_json out;
    out["a"] = a;
    out["k"] = k;
    out["roots"] = roots;
    out["provenance"] = prov;
    io::write_json(fs::path(g.out) / "solve.json", out);
    return all_converged ? 0 : 1;
}

// ------------------------------------------------------------------ branch

int cmd_branch(const GlobalOpts& g, const BranchOpts& bo, int j, int k) {
    const std::string fmt = resolve_format(g, "json", {"json", "csv"});
    const ContinuationConfig cc = continuation_config(g, bo);
    const Branch plus = trace_branch(j, k, +1, cc);
    const Branch minus = trace_branch(j, k, -1, cc);

    auto report = [&](const char* side, const Branch& b) {
        std::cout << "  " << side << ": " << b.points.size()
                  << " points, termination " << to_string(b.termination);
        if (!b.note.empty()) std::cout << " " << b.note;
        std::cout << "\n";
    };
    std::cout << "branch (j=" << j << ", k=" << k
              << ") from a_jk = " << fd(plus.a_origin) << "\n";
    report("plus ", plus);
    report("minus", minus);

    ordered_json prov = base_provenance(g, "branch", fmt);
    prov["j"] = j;
    prov["k"] = k;
    ordered_json bj = io::branch_json(plus, minus, cc);

    // Involution parity probe at the farthest accepted point: odd j is
    // expected to swap the sign of s, even j to preserve it.
    const BranchPoint* probe = nullptr;
    if (!plus.points.empty())
        probe = &plus.points.back();
    else if (!minus.points.empty())
        probe = &minus.points.back();
    if (probe) {
        const EllipsoidGeometry geom(probe->a, g.quad_tol);
        const ReflectedRoot refl =
            reflect_root(geom, probe->s, k, shooting_config(g));
        const bool preserved = refl.s * probe->s > 0.0;
        bj["iota_parity"] = preserved ? "preserved" : "swapped";
        bj["iota_parity_consistent"] = preserved == (j % 2 == 0);
        bj["iota_image_f"] = refl.check.f;
        std::cout << "  iota parity: " << (preserved ? "preserved" : "swapped")
                  << " (consistent with j parity: "
                  << (preserved == (j % 2 == 0) ? "yes" : "no") << ")\n";
    }
    bj["provenance"] = prov;

    const std::string stem =
        "branch_j" + std::to_string(j) + "k" + std::to_string(k);
    const fs::path dir(g.out);
    io::write_json(dir / (stem + ".json"), bj);
    io::write_branch_csv(dir / (stem + ".csv"), plus, minus, &prov);

    const bool dead = plus.termination == BranchTermination::failure &&
                      minus.termination == BranchTermination::failure;
    return dead ? 1 : 0;
}

// ----------------------------------------------------------------- diagram

int cmd_diagram(const GlobalOpts& g, const BranchOpts& bo, int kmax) {
    const std::string fmt = resolve_format(g, "csv", {"csv"});
    const ContinuationConfig cc = continuation_config(g, bo);
    const auto inst = bifurcation_instants(kmax);
    std::vector<std::pair<int, int>> labels;
    for (const auto& bi : inst) labels.push_back({bi.j, bi.k});

    const int threads = resolve_threads(g);
    const Diagram dg = compute_diagram(labels, cc, threads);

    const fs::path dir(g.out);
    ordered_json summary_labels = ordered_json::array();
    for (std::size_t i = 0; i < dg.branches.size(); ++i) {
        const DiagramBranch& db = dg.branches[i];
        ordered_json prov = base_provenance(g, "diagram", fmt);
        prov["kmax"] = kmax;
        prov["j"] = db.j;
        prov["k"] = db.k;
        const std::string stem = "branch_j" + std::to_string(db.j) + "k" +
                                 std::to_string(db.k);
        io::write_branch_csv(dir / (stem + ".csv"), db.plus, db.minus, &prov);
        ordered_json lbl;
        lbl["j"] = db.j;
        lbl["k"] = db.k;
        lbl["a_jk"] = inst[i].a;
        lbl["points_plus"] = db.plus.points.size();
        lbl["points_minus"] = db.minus.points.size();
        lbl["termination_plus"] = to_string(db.plus.termination);
        lbl["termination_minus"] = to_string(db.minus.termination);
        summary_labels.push_back(std::move(lbl));
        std::cout << "  (j=" << db.j << ", k=" << db.k << "): "
                  << db.plus.points.size() << "+" << db.minus.points.size()
                  << " points (" << to_string(db.plus.termination) << "/"
                  << to_string(db.minus.termination) << ")\n";
    }

    ordered_json prov = base_provenance(g, "diagram", fmt);
    prov["kmax"] = kmax;
    io::write_diagram_csv(dir / "diagram.csv", dg, cc, 257, &prov);

    ordered_json summary;
    summary["kmax"] = kmax;
    summary["labels"] = summary_labels;
    if (std::isfinite(dg.min_branch_separation))
        summary["min_branch_separation"] = dg.min_branch_separation;
    else
        summary["min_branch_separation"] = nullptr;
    summary["config"] = io::config_json(cc);
    summary["provenance"] = prov;
    io::write_json(dir / "diagram.json", summary);

    std::cout << dg.branches.size() << " branches -> "
              << (dir / "diagram.csv").string();
    if (std::isfinite(dg.min_branch_separation))
        std::cout << "  (min branch separation "
                  << fd(dg.min_branch_separation) << ")";
    std::cout << "\n";
    return 0;
}

// -------------------------------------------------------------------- lift

int cmd_lift(const GlobalOpts& g, double a, double s, int k, int n_t,
             int n_psi, int drop_axis) {
    const std::string fmt = resolve_format(g, "obj", {"obj", "json"});
    const EllipsoidGeometry geom(a, g.quad_tol);
    const Trajectory tr = integrate_closed(geom, s, k, ode_config(g));
    const TorusMesh mesh = lift(geom, tr, n_t, n_psi);
    const double area_smooth = torus_area(geom, tr);
    const double area_mesh = mesh_area(mesh);
    const EmbeddingReport emb = embedding_check(geom, tr);

    ordered_json prov = base_provenance(g, "lift", fmt);
    prov["a"] = a;
    prov["s"] = s;
    prov["k"] = k;
    prov["n_t"] = mesh.n_t;
    prov["n_psi"] = mesh.n_psi;
    prov["drop_axis"] = drop_axis;

    const fs::path dir(g.out);
    fs::path mesh_file;
    if (fmt == "obj") {
        mesh_file = dir / "mesh.obj";
        io::write_obj(mesh_file, mesh, drop_axis, &prov);
    } else {
        mesh_file = dir / "mesh.json";
        ordered_json mj = io::mesh_json(mesh);
        mj["provenance"] = prov;
        io::write_json(mesh_file, mj);
    }

    ordered_json crossings = ordered_json::array();
    for (const PlanarCrossing& c : emb.crossings)
        crossings.push_back({{"t1", c.t1},
                             {"t2", c.t2},
                             {"x", c.x},
                             {"y", c.y}});
    ordered_json diag;
    diag["a"] = a;
    diag["s"] = s;
    diag["k"] = k;
    diag["ell_k"] = mesh.ell;
    diag["torus_area"] = area_smooth;
    diag["mesh_area"] = area_mesh;
    diag["max_residual"] = mesh.max_residual;
    diag["closure_error"] = mesh.closure_error;
    diag["embedded"] = emb.embedded;
    diag["crossings"] = crossings;
    diag["mesh_file"] = mesh_file.filename().string();
    diag["provenance"] = prov;
    io::write_json(dir / "lift.json", diag);

    std::cout << "area = " << fd(area_smooth) << " (mesh " << fd(area_mesh)
              << "), max residual = " << fd(mesh.max_residual) << "\n"
              << (emb.embedded
                      ? std::string("embedded")
                      : "self-intersects at " +
                            std::to_string(emb.crossings.size()) +
                            " point(s)")
              << " -> " << mesh_file.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const GlobalOpts& g) {
    selftest::Options opt;
    opt.threads = resolve_threads(g);
    opt.seed = g.seed;
    const auto results = selftest::run_all(opt);
    selftest::print_results(std::cout, results);
    return selftest::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for S^1-invariant minimal tori in "
                 "3-dimensional ellipsoids via closed geodesics of the "
                 "reduced disk metric"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--quad-tol", g.quad_tol,
                   "arclength quadrature tolerance")
        ->capture_default_str();
    app.add_option("--ode-rtol", g.ode_rtol, "integrator relative tolerance")
        ->capture_default_str();
    app.add_option("--ode-atol", g.ode_atol, "integrator absolute tolerance")
        ->capture_default_str();
    app.add_option("--root-tol", g.root_tol, "|f| accepted as a root")
        ->capture_default_str();
    app.add_option("--out", g.out, "output directory")
        ->capture_default_str();
    app.add_option("--format", g.format,
                   "output format: csv, json, or obj (per-command default)");
    app.add_option("--threads", g.threads,
                   "worker threads for diagram/selftest (0 = auto)")
        ->check(CLI::Range(0, 256))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for sampled property checks")
        ->capture_default_str();
    app.set_config("--config", "",
                   "TOML-style config file (command-line flags override it)");

    auto* sc_instants =
        app.add_subcommand("instants", "enumerate critical axis ratios");
    int kmax = 3;
    sc_instants->add_option("--kmax", kmax, "largest winding number")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();

    auto* sc_shoot = app.add_subcommand(
        "shoot", "integrate one launch and report the shooting value");
    double sh_a = 1.0, sh_s = 0.0;
    int sh_k = 1;
    sc_shoot->add_option("--a", sh_a, "axis ratio")->required();
    sc_shoot->add_option("--s", sh_s, "launch parameter in (-1, 1)")
        ->capture_default_str();
    sc_shoot->add_option("--k", sh_k, "crossing count to integrate to")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();

    auto* sc_solve = app.add_subcommand(
        "solve", "scan and refine closed-geodesic roots at fixed a");
    double so_a = 1.0, so_lo = 0.01, so_hi = 0.95;
    int so_k = 1, so_grid = 512;
    sc_solve->add_option("--a", so_a, "axis ratio")->required();
    sc_solve->add_option("--k", so_k, "crossing count")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    sc_solve->add_option("--s-min", so_lo, "scan lower bound")
        ->capture_default_str();
    sc_solve->add_option("--s-max", so_hi, "scan upper bound")
        ->capture_default_str();
    sc_solve->add_option("--grid", so_grid, "scan cells")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    auto* sc_branch = app.add_subcommand(
        "branch", "continue one bifurcation branch in both s-directions");
    BranchOpts bo;
    int br_j = 1, br_k = 1;
    sc_branch->add_option("--j", br_j, "branch label j")->required();
    sc_branch->add_option("--k", br_k, "branch label k (winding)")->required();

    auto* sc_diagram = app.add_subcommand(
        "diagram", "trace all branches with k <= kmax and merge");
    int dg_kmax = 2;
    sc_diagram->add_option("--kmax", dg_kmax, "largest winding number")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();

    for (CLI::App* sc : {sc_branch, sc_diagram}) {
        sc->add_option("--a-min", bo.a_min, "stop when a falls below this")
            ->capture_default_str();
        sc->add_option("--a-max", bo.a_max, "stop when a exceeds this")
            ->capture_default_str();
        sc->add_option("--ds0", bo.ds0, "initial pseudo-arclength step")
            ->capture_default_str();
        sc->add_option("--ds-max", bo.ds_max, "largest step")
            ->capture_default_str();
        sc->add_option("--ds-min", bo.ds_min,
                       "give up when the step falls below this")
            ->capture_default_str();
        sc->add_option("--max-points", bo.max_points,
                       "accepted-point budget per direction")
            ->check(CLI::Range(1, 1000000))
            ->capture_default_str();
        sc->add_option("--newton-tol", bo.newton_tol,
                       "corrector residual tolerance")
            ->capture_default_str();
    }

    auto* sc_lift = app.add_subcommand(
        "lift", "lift a closed root to a torus mesh in R^4");
    double lf_a = 1.0, lf_s = 0.0;
    int lf_k = 1, lf_nt = 0, lf_npsi = 128, lf_drop = 3;
    sc_lift->add_option("--a", lf_a, "axis ratio")->required();
    sc_lift->add_option("--s", lf_s, "root launch parameter")
        ->capture_default_str();
    sc_lift->add_option("--k", lf_k, "crossing count of the root")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    sc_lift->add_option("--n-t", lf_nt,
                        "mesh resolution along the geodesic (0 = 512 per "
                        "winding)")
        ->check(CLI::Range(0, 1 << 20))
        ->capture_default_str();
    sc_lift->add_option("--n-psi", lf_npsi, "mesh resolution around the orbit")
        ->check(CLI::Range(3, 1 << 20))
        ->capture_default_str();
    sc_lift->add_option("--drop-axis", lf_drop,
                        "ambient coordinate dropped in the OBJ projection "
                        "(0=Re z, 1=Im z, 2=Re w, 3=Im w)")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();

    app.add_subcommand("selftest", "run the acceptance suite");
    auto* sc_selftest = app.get_subcommand("selftest");

    // Global flags are accepted on either side of the subcommand name.
    for (CLI::App* sc : {sc_instants, sc_shoot, sc_solve, sc_branch,
                         sc_diagram, sc_lift, sc_selftest})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_instants->parsed()) return cmd_instants(g, kmax);
        if (sc_shoot->parsed()) return cmd_shoot(g, sh_a, sh_s, sh_k);
        if (sc_solve->parsed())
            return cmd_solve(g, so_a, so_k, so_lo, so_hi, so_grid);
        if (sc_branch->parsed()) return cmd_branch(g, bo, br_j, br_k);
        if (sc_diagram->parsed()) return cmd_diagram(g, bo, dg_kmax);
        if (sc_lift->parsed())
            return cmd_lift(g, lf_a, lf_s, lf_k, lf_nt, lf_npsi, lf_drop);
        if (sc_selftest->parsed()) return cmd_selftest(g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2; // no subcommand (require_subcommand should prevent this)
}
