// rootfind.hpp — bracketed Brent root finding with geometric bracket growth
#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include "sqzd/errors.hpp"

namespace sqzd {

struct RootOptions {
    double x_tol = 1e-12;
    int max_iter = 200;
};

// Brent's method on [lo, hi]; f(lo) and f(hi) must have opposite signs.
template <class F>
double find_root(F&& f, double lo, double hi, const RootOptions& opt = {}) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) {
        std::ostringstream msg;
        msg << "find_root: root not bracketed: f(" << a << ")=" << fa << ", f(" << b
            << ")=" << fb;
        throw NumericalError(msg.str());
    }
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr double eps = 2.2204460492503131e-16;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * opt.x_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < (min1 < min2 ? min1 : min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1)
            b += d;
        else
            b += (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw NumericalError("find_root: iteration limit reached");
}

// Grows [lo, hi] upward by `factor` until f changes sign relative to f(lo).
// Returns the bracketing pair; throws if no sign change within max_steps.
template <class F>
std::pair<double, double> grow_bracket_up(F&& f, double lo, double hi,
                                          double factor = 2.0, int max_steps = 200) {
    const double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < max_steps; ++i) {
        if (flo * fhi <= 0.0) return {lo, hi};
        lo = hi;
        hi *= factor;
        fhi = f(hi);
    }
    std::ostringstream msg;
    msg << "grow_bracket_up: no sign change up to " << hi << " (f(lo)=" << flo
        << ", f(hi)=" << fhi << ")";
    throw NumericalError(msg.str());
}

}  // namespace sqzd
