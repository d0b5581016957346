#pragma once

#include <cmath>

#include "ustc/errors.hpp"

namespace ustc {

// Adaptive Simpson with the classic Richardson error estimate |S2 - S1|/15.
// Absolute tolerance; the depth cap throws QuadratureError instead of
// returning a silently unconverged value.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth) {
    auto simpson = [](double fa, double fm, double fb, double h) {
        return (fa + 4.0 * fm + fb) * h / 6.0;
    };
    struct Rec {
        const F& f;
        double tol0;
        int cap;
        double run(double a, double fa, double m, double fm, double b, double fb,
                   double whole, double tol, int depth) const {
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double hl = (m - a);
            const double hr = (b - m);
            const double left = (fa + 4.0 * flm + fm) * hl / 6.0;
            const double right = (fm + 4.0 * frm + fb) * hr / 6.0;
            const double err = (left + right - whole) / 15.0;
            if (std::abs(err) <= tol) return left + right + err;
            if (depth >= cap)
                throw QuadratureError("adaptive_simpson: depth cap reached before tolerance");
            return run(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
                   run(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
        }
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return Rec{f, abs_tol, max_depth}.run(a, fa, m, fm, b, fb, whole, abs_tol, 0);
}

} // namespace ustc
