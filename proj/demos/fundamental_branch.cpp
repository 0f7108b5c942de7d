// Walk the branch of simple closed geodesics that bifurcates from the
// equatorial circle at a_{1,1} = 1/sqrt(3), and show the root involution
// swapping the sign of s at its far end.

#include <cstdio>

#include "geotori/bifurcation.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/shooting.hpp"

using namespace geotori;

int main() {
    std::printf("bifurcation instants up to k = 2:\n");
    for (const BifurcationInstant& bi : bifurcation_instants(2))
        std::printf("  a_{%d,%d} = %.12f\n", bi.j, bi.k, bi.a);

    ContinuationConfig cfg;
    cfg.ds_max = 0.02;
    cfg.max_points = 120;
    cfg.a_min = 0.30;

    std::printf("\ntracing the (1,1) branch toward a_min = %g:\n", cfg.a_min);
    const Branch plus = trace_branch(1, 1, +1, cfg);
    std::printf("  %zu points, termination: %s\n", plus.points.size(),
                to_string(plus.termination));
    std::printf("  %10s %12s %12s %10s  (winding, equator, diameter)\n",
                "a", "s", "ell_1", "|f_1|");
    for (std::size_t i = 0; i < plus.points.size();
         i += plus.points.size() / 8 + 1) {
        const BranchPoint& p = plus.points[i];
        std::printf("  %10.6f %12.8f %12.8f %10.2e  (%d, %d, %d)\n", p.a,
                    p.s, p.ell, p.f_residual, p.winding,
                    p.equator_crossings, p.diameter_self_crossings);
    }

    const BranchPoint& far = plus.points.back();
    const EllipsoidGeometry g(far.a);
    const ReflectedRoot refl = reflect_root(g, far.s, 1);
    std::printf("\ninvolution at the far point (a = %.6f):\n", far.a);
    std::printf("  s = %+.8f  ->  iota(s) = %+.8f   (f there: %.2e)\n",
                far.s, refl.s, refl.check.f);
    return 0;
}
