// io.hpp: file formats for the toolkit's artifacts.
//
// Everything numeric is written with 17 significant digits (%.17g), so
// files round-trip doubles exactly and identical runs produce identical
// bytes.  JSON uses nlohmann::ordered_json to keep key order stable.
//
// Formats:
//   trajectory CSV : t,rho,theta,rho_dot,theta_dot,clairaut_drift,energy_drift
//   instants CSV   : j,k,a_jk
//   branch JSON    : { j, k, a_jk, config, points: [ { a, s, ell_k,
//                      f_residual, winding, clifford_intersections,
//                      self_intersections } ] } (+ per-side terminations)
//   branch CSV     : the same points as flat rows
//   diagram CSV    : a,s,j,k   (trivial branch rows carry j = k = 0)
//   mesh OBJ       : ℝ³ projection of the ℝ⁴ vertices (one axis dropped)
//   mesh JSON      : full ℝ⁴ vertex list with grid metadata
//
// Every writer takes an optional "provenance" object (flat key → value);
// CSV and OBJ emit it as leading `# key = value` comment lines, JSON
// callers attach it as a "provenance" member, so each file records the
// resolved settings that produced it.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "geotori/bifurcation.hpp"
#include "geotori/geodesic_flow.hpp"
#include "geotori/lift.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/shooting.hpp"

namespace geotori::io {

using ordered_json = nlohmann::ordered_json;

// %.17g: shortest text that still round-trips any double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return os;
}

// `# key = value` comment block carrying the resolved settings.
inline void write_comment_header(std::ofstream& os,
                                 const ordered_json* prov) {
    if (!prov) return;
    for (const auto& [key, val] : prov->items()) {
        os << "# " << key << " = ";
        if (val.is_number_float())
            os << format_double(val.get<double>());
        else if (val.is_string())
            os << val.get<std::string>();
        else
            os << val.dump();
        os << '\n';
    }
}

inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const EllipsoidGeometry& g,
                                 const Trajectory& tr,
                                 const ordered_json* prov = nullptr) {
    std::ofstream os = open_out(path);
    write_comment_header(os, prov);
    os << "t,rho,theta,rho_dot,theta_dot,clairaut_drift,energy_drift\n";
    auto row = [&](double t) {
        const GeodesicState st = tr.state(t);
        const double dc = (clairaut(g, st) - tr.clairaut0()) / tr.clairaut0();
        const double dE = (energy(g, st) - tr.energy0()) / tr.energy0();
        os << format_double(t) << ',' << format_double(st.rho) << ','
           << format_double(st.theta) << ',' << format_double(st.rho_dot)
           << ',' << format_double(st.theta_dot) << ','
           << format_double(dc) << ',' << format_double(dE) << '\n';
    };
    row(tr.t_min());
    for (const DenseSegment<4>& seg : tr.segments()) {
        const double t_end = seg.t0 + seg.h;
        if (t_end > tr.t_min() && t_end <= tr.t_max()) row(t_end);
    }
}

inline void write_instants_csv(const std::filesystem::path& path,
                               const std::vector<BifurcationInstant>& inst,
                               const ordered_json* prov = nullptr) {
    std::ofstream os = open_out(path);
    write_comment_header(os, prov);
    os << "j,k,a_jk\n";
    for (const auto& bi : inst)
        os << bi.j << ',' << bi.k << ',' << format_double(bi.a) << '\n';
}

inline ordered_json instants_json(const std::vector<BifurcationInstant>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& bi : v)
        arr.push_back({{"j", bi.j}, {"k", bi.k}, {"a_jk", bi.a}});
    return arr;
}

inline ordered_json config_json(const ContinuationConfig& cfg) {
    return ordered_json{
        {"ds0", cfg.ds0},
        {"ds_max", cfg.ds_max},
        {"ds_min", cfg.ds_min},
        {"a_min", cfg.a_min},
        {"a_max", cfg.a_max},
        {"max_points", cfg.max_points},
        {"max_newton", cfg.max_newton},
        {"newton_tol", cfg.newton_tol},
        {"h_a", cfg.h_a},
        {"h_s", cfg.h_s},
        {"quad_tol", cfg.quad_tol},
        {"ode_rtol", cfg.shooting.ode.rtol},
        {"ode_atol", cfg.shooting.ode.atol},
        {"root_tol", cfg.shooting.root_ftol},
    };
}

inline ordered_json branch_point_json(const BranchPoint& p) {
    return ordered_json{
        {"a", p.a},
        {"s", p.s},
        {"ell_k", p.ell},
        {"f_residual", p.f_residual},
        {"winding", p.winding},
        {"clifford_intersections", p.equator_crossings},
        {"self_intersections", p.diameter_self_crossings},
    };
}

// One (j, k) label, both s-sides merged into a single points array
// ordered by increasing s (minus side reversed, then plus side).
inline ordered_json branch_json(const Branch& plus, const Branch& minus,
                                const ContinuationConfig& cfg) {
    ordered_json points = ordered_json::array();
    for (auto it = minus.points.rbegin(); it != minus.points.rend(); ++it)
        points.push_back(branch_point_json(*it));
    for (const auto& p : plus.points)
        points.push_back(branch_point_json(p));
    return ordered_json{
        {"j", plus.j},
        {"k", plus.k},
        {"a_jk", plus.a_origin},
        {"config", config_json(cfg)},
        {"points", points},
        {"termination_plus", to_string(plus.termination)},
        {"termination_minus", to_string(minus.termination)},
        {"note_plus", plus.note},
        {"note_minus", minus.note},
    };
}

// Flat CSV of one label's points, minus side first (reversed) so the
// rows run in increasing s, matching the JSON points array.
inline void write_branch_csv(const std::filesystem::path& path,
                             const Branch& plus, const Branch& minus,
                             const ordered_json* prov = nullptr) {
    std::ofstream os = open_out(path);
    write_comment_header(os, prov);
    os << "a,s,ell_k,f_residual,winding,clifford_intersections,"
          "self_intersections\n";
    auto row = [&](const BranchPoint& p) {
        os << format_double(p.a) << ',' << format_double(p.s) << ','
           << format_double(p.ell) << ',' << format_double(p.f_residual)
           << ',' << p.winding << ',' << p.equator_crossings << ','
           << p.diameter_self_crossings << '\n';
    };
    for (auto it = minus.points.rbegin(); it != minus.points.rend(); ++it)
        row(*it);
    for (const auto& p : plus.points) row(p);
}

// Diagram rows: every branch point as (a, s, j, k), label order then s
// ascending; the trivial branch appears as j = k = 0 rows at s = 0.
inline void write_diagram_csv(const std::filesystem::path& path,
                              const Diagram& dg,
                              const ContinuationConfig& cfg,
                              int trivial_samples = 257,
                              const ordered_json* prov = nullptr) {
    std::ofstream os = open_out(path);
    write_comment_header(os, prov);
    os << "a,s,j,k\n";
    for (int i = 0; i < trivial_samples; ++i) {
        const double a = cfg.a_min + (cfg.a_max - cfg.a_min) * i /
                                         double(trivial_samples - 1);
        os << format_double(a) << ",0,0,0\n";
    }
    for (const DiagramBranch& db : dg.branches) {
        for (auto it = db.minus.points.rbegin();
             it != db.minus.points.rend(); ++it)
            os << format_double(it->a) << ',' << format_double(it->s) << ','
               << db.j << ',' << db.k << '\n';
        for (const auto& p : db.plus.points)
            os << format_double(p.a) << ',' << format_double(p.s) << ','
               << db.j << ',' << db.k << '\n';
    }
}

// OBJ is inherently 3-d, so one of the four ambient coordinates
// (Re z, Im z, Re w, Im w) is dropped; by default the last.
inline void write_obj(const std::filesystem::path& path,
                      const TorusMesh& mesh, int drop_axis = 3,
                      const ordered_json* prov = nullptr) {
    if (drop_axis < 0 || drop_axis > 3)
        throw std::invalid_argument("write_obj: drop_axis must be 0..3");
    static const char* kAxisNames[4] = {"Re z", "Im z", "Re w", "Im w"};
    int keep[3], n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != drop_axis) keep[n++] = i;
    std::ofstream os = open_out(path);
    os << "# lifted torus, R^3 projection (" << kAxisNames[keep[0]] << ", "
       << kAxisNames[keep[1]] << ", " << kAxisNames[keep[2]] << "); "
       << kAxisNames[drop_axis] << " dropped\n"
       << "# a = " << format_double(mesh.a) << "\n"
       << "# s = " << format_double(mesh.s) << "\n"
       << "# k = " << mesh.k << "\n"
       << "# grid = " << mesh.n_t << " x " << mesh.n_psi << "\n";
    write_comment_header(os, prov);
    for (const auto& v : mesh.vertices)
        os << "v " << format_double(v[keep[0]]) << ' '
           << format_double(v[keep[1]]) << ' ' << format_double(v[keep[2]])
           << '\n';
    for (const auto& q : mesh.quads)
        os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' '
           << q[3] + 1 << '\n';
}

inline ordered_json mesh_json(const TorusMesh& mesh) {
    ordered_json verts = ordered_json::array();
    for (const auto& v : mesh.vertices)
        verts.push_back({v[0], v[1], v[2], v[3]});
    return ordered_json{
        {"a", mesh.a},
        {"s", mesh.s},
        {"k", mesh.k},
        {"n_t", mesh.n_t},
        {"n_psi", mesh.n_psi},
        {"ell_k", mesh.ell},
        {"max_residual", mesh.max_residual},
        {"closure_error", mesh.closure_error},
        {"vertices", verts},
    };
}

inline void write_json(const std::filesystem::path& path,
                       const ordered_json& j) {
    std::ofstream os = open_out(path);
    os << j.dump(2) << '\n';
}

} // namespace geotori::io
