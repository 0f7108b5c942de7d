// roots.hpp: bracketed scalar root finding (Brent's method).
//
// Brent's zeroin: inverse quadratic interpolation with secant and bisection
// safeguards.  Convergence is certified by the bracket, not by the residual
// alone, so callers get both |f| and a rigorous enclosure width.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geotori/errors.hpp"

namespace geotori {

struct RootResult {
    double x = 0.0;             // best abscissa found
    double fx = 0.0;            // f(x)
    double bracket_width = 0.0; // final enclosure width
    int iterations = 0;
    bool converged = false;     // bracket <= xtol and |fx| <= ftol
};

// Find a root of f in [lo, hi]; f(lo) and f(hi) must have opposite signs
// (an exact zero at either endpoint is accepted immediately).  Iterates
// until the bracket width falls below xtol or max_iter is hit, then checks
// the residual against ftol.
template <class F>
RootResult brent(F&& f, double lo, double hi, double xtol = 1e-12,
                 double ftol = 1e-10, int max_iter = 200) {
    if (!(xtol > 0.0) || !(ftol > 0.0))
        throw std::invalid_argument("brent: tolerances must be > 0");
    if (!(lo < hi))
        throw std::invalid_argument("brent: need lo < hi");

    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0.0, 0, true};
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent: endpoints do not bracket a root");

    // c is the previous iterate kept so that [b, c] always brackets.
    double c = a, fc = fa;
    double d = b - a, e = d;
    RootResult out;
    for (int it = 1; it <= max_iter; ++it) {
        out.iterations = it;
        if ((fb > 0.0) == (fc > 0.0)) { // re-establish bracket around b
            c = a; fc = fa; d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) { // b is the best point: swap
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
            0.5 * xtol;
        const double xm = 0.5 * (c - b);
        out.x = b;
        out.fx = fb;
        out.bracket_width = std::abs(c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            out.converged = out.bracket_width <= xtol && std::abs(fb) <= ftol;
            // fb == 0 is converged regardless of how wide the enclosure is.
            if (fb == 0.0) out.converged = true;
            return out;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Attempt inverse quadratic (or secant if only two points).
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d; d = p / q; // interpolation accepted
            } else {
                d = xm; e = d;    // fall back to bisection
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw RootFindingError("brent: max_iter reached without convergence");
}

} // namespace geotori
