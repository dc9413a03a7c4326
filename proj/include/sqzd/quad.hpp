// quad.hpp — globally adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "sqzd/errors.hpp"

namespace sqzd {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    int max_panels = 20000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // achieved error estimate
    int panels = 0;
    bool converged = false;
};

namespace quad_detail {

// K15 abscissae on [0,1]; odd indices (plus the center) carry the embedded G7 rule.
inline constexpr double kXgk[7] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,  // center
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,  // center
};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel eval_panel(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fs = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1) g7 += kWg[i / 2] * fs;
    }
    const double value = h * k15;
    const double diff = std::abs(h * (k15 - g7));
    // standard QUADPACK-style sharpening of the raw G-K difference
    double err = diff > 0 ? std::pow(200.0 * diff, 1.5) : 0.0;
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
    return {a, b, value, err};
}

}  // namespace quad_detail

// Integrates f over [a, b], bisecting the worst panel until the summed error
// estimate meets max(abs_tol, rel_tol * |integral|) or the panel budget runs out.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    using quad_detail::Panel;
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel> panels;
    panels.push(quad_detail::eval_panel(f, a, b));
    double total_value = panels.top().value;
    double total_error = panels.top().error;
    int count = 1;
    const double width_floor =
        std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b) + 1.0);
    auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value)); };

    while (total_error > tolerance() && count < opt.max_panels) {
        const Panel worst = panels.top();
        if (worst.b - worst.a < width_floor) break;  // refinement limited by roundoff
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = quad_detail::eval_panel(f, worst.a, mid);
        const Panel right = quad_detail::eval_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    out.value = total_value;
    out.error = total_error;
    out.panels = count;
    out.converged = total_error <= tolerance();
    return out;
}

// Like integrate(), but raises NumericalError (with the achieved estimate) on
// non-convergence instead of returning a flagged result.
template <class F>
double integrate_or_throw(F&& f, double a, double b, const QuadOptions& opt,
                          const char* what) {
    const QuadResult res = integrate(f, a, b, opt);
    if (!res.converged) {
        std::ostringstream msg;
        msg << what << ": quadrature did not converge on [" << a << ", " << b
            << "]; achieved error estimate " << res.error << " with " << res.panels
            << " panels (requested rel_tol " << opt.rel_tol << ", abs_tol " << opt.abs_tol
            << ")";
        throw NumericalError(msg.str());
    }
    return res.value;
}

}  // namespace sqzd
