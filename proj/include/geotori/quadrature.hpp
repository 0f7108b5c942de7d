// quadrature.hpp: adaptive Simpson quadrature for smooth 1-d integrands.
//
// The integrands in this library (arclength densities, mesh area elements)
// are analytic on the closed interval, so classic adaptive Simpson with the
// 1/15 Richardson error estimate converges fast and gives an honest bound.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "geotori/errors.hpp"

namespace geotori {

namespace detail {

template <class F>
double simpson_panel(F& f, double a, double fa, double b, double fb,
                     double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_panel(f, a, fa, m, fm, lm, flm);
    const double right = simpson_panel(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    // Standard acceptance test: |S2 - S1| <= 15 tol implies the Richardson
    // extrapolated value is within ~tol of the true integral.
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        if (depth <= 0 && std::abs(delta) > 15.0 * tol)
            throw IntegrationError("adaptive_simpson: recursion depth "
                                   "exhausted before reaching tolerance");
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                                depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                                depth - 1);
}

} // namespace detail

// Integrate f over [a, b] (a <= b or a > b, signed) to absolute tolerance
// tol.  max_depth bounds the bisection depth; 48 halvings take the panel
// width below 2^-48 of the interval, far past double resolution.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
    if (!(tol > 0.0))
        throw std::invalid_argument("adaptive_simpson: tol must be > 0");
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    const double m = 0.5 * (a + b), fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw IntegrationError("adaptive_simpson: non-finite integrand");
    const double whole = detail::simpson_panel(f, a, fa, b, fb, m, fm);
    return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol,
                                        max_depth);
}

} // namespace geotori
