#include "sqzd/bath.hpp"

#include <cmath>
#include <sstream>

#include "sqzd/quad.hpp"

namespace sqzd {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;

void require_nonnegative_tau(double tau, const char* op) {
    if (!(tau >= 0.0)) {
        std::ostringstream msg;
        msg << op << ": tau must be >= 0, got " << tau;
        throw std::domain_error(msg.str());
    }
}

struct Coefficients {
    double a, b, c;
};

// A = ln(1+tau^2), B = (1/2) ln(1+4 tau^2) - A, C = 2 atan(tau) - atan(2 tau)
Coefficients coefficients(double tau) {
    const double t2 = tau * tau;
    const double a = std::log1p(t2);
    return {a, 0.5 * std::log1p(4.0 * t2) - a, 2.0 * std::atan(tau) - std::atan(2.0 * tau)};
}

Coefficients coefficient_rates(double tau) {
    const double d1 = 1.0 + tau * tau;
    const double d4 = 1.0 + 4.0 * tau * tau;
    return {2.0 * tau / d1, 4.0 * tau / d4 - 2.0 * tau / d1, 2.0 / d1 - 2.0 / d4};
}

// (1 - cos(x*tau)) / x^2, stable for small arguments
double one_minus_cos_over_x2(double x, double tau) {
    const double y = x * tau;
    if (std::abs(y) < 1e-4) {
        const double y2 = y * y;
        return 0.5 * tau * tau * (1.0 - y2 / 12.0 * (1.0 - y2 / 30.0));
    }
    return (1.0 - std::cos(y)) / (x * x);
}

// x * coth(beta_c * x / 2) with the 1/x pole of coth cancelled analytically;
// beta_c = beta * omega_c is the dimensionless inverse temperature.
double x_coth_half(double x, double beta_c) {
    const double u = 0.5 * beta_c * x;
    if (u < 1e-8) return 2.0 / beta_c + beta_c * x * x / 6.0;
    if (u > 19.0) return x;  // coth saturates at 1
    return x / std::tanh(u);
}

}  // namespace

SqueezedBathSpec SqueezedBathSpec::make(double r, double theta, double beta,
                                        double omega_c, SpectralDensity spectral) {
    if (!(r >= 0.0)) throw ConfigError("SqueezedBathSpec: squeezing strength r must be >= 0");
    if (!(omega_c > 0.0)) throw ConfigError("SqueezedBathSpec: cutoff omega_c must be > 0");
    if (!(beta > 0.0)) throw ConfigError("SqueezedBathSpec: beta must be > 0 or infinite");
    if (!std::isfinite(theta)) throw ConfigError("SqueezedBathSpec: theta must be finite");
    double th = std::fmod(theta, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    return {r, th, beta, omega_c, spectral};
}

DephasingProfile DephasingProfile::analytic_zero_t(const SqueezedBathSpec& bath) {
    if (!std::isinf(bath.beta))
        throw ConfigError("DephasingProfile: AnalyticZeroT requires an infinite beta (zero temperature)");
    if (bath.spectral != SpectralDensity::Ohmic)
        throw ConfigError("DephasingProfile: AnalyticZeroT requires the Ohmic spectral density");
    DephasingProfile p;
    p.bath = bath;
    p.method = DephasingMethod::AnalyticZeroT;
    return p;
}

DephasingProfile DephasingProfile::quadrature(const SqueezedBathSpec& bath, double rel_tol,
                                              double abs_tol) {
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0))
        throw ConfigError("DephasingProfile: quadrature tolerances must be positive");
    DephasingProfile p;
    p.bath = bath;
    p.method = DephasingMethod::Quadrature;
    p.quad_rel_tol = rel_tol;
    p.quad_abs_tol = abs_tol;
    return p;
}

double gamma_analytic_zero_t(const SqueezedBathSpec& bath, double tau) {
    require_nonnegative_tau(tau, "gamma_analytic_zero_t");
    if (!std::isinf(bath.beta))
        throw ConfigError("gamma_analytic_zero_t: bath must be at zero temperature");
    if (bath.spectral != SpectralDensity::Ohmic)
        throw ConfigError("gamma_analytic_zero_t: bath must be Ohmic");
    if (tau == 0.0) return 0.0;
    const auto [a, b, c] = coefficients(tau);
    return (a * std::cosh(2.0 * bath.r) -
            std::sinh(2.0 * bath.r) * (b * std::cos(bath.theta) + c * std::sin(bath.theta))) /
           kTwoPi;
}

double gamma_quadrature(const DephasingProfile& profile, double tau) {
    require_nonnegative_tau(tau, "gamma_quadrature");
    if (profile.method != DephasingMethod::Quadrature)
        throw ConfigError("gamma_quadrature: profile method must be Quadrature");
    if (tau == 0.0) return 0.0;  // integrand vanishes identically

    const SqueezedBathSpec& bath = profile.bath;
    const bool zero_t = std::isinf(bath.beta);
    const double beta_c = bath.beta * bath.omega_c;
    const double ch = std::cosh(2.0 * bath.r);
    const double sh = std::sinh(2.0 * bath.r);
    const double theta = bath.theta;

    // In units x = omega/omega_c the Ohmic integral reduces to
    //   Gamma = (1/pi) \int_0^inf dx e^{-x} coth(beta_c x / 2) (1 - cos(x tau)) / x
    //                 * [cosh 2r - sinh 2r cos(x tau - theta)].
    // The exponential cutoff makes the tail beyond x = 50 smaller than 1e-20.
    auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double thermal = zero_t ? x : x_coth_half(x, beta_c);
        return std::exp(-x) * one_minus_cos_over_x2(x, tau) * thermal *
               (ch - sh * std::cos(x * tau - theta)) / kPi;
    };

    QuadOptions opt;
    opt.rel_tol = profile.quad_rel_tol;
    opt.abs_tol = profile.quad_abs_tol;
    return integrate_or_throw(integrand, 0.0, 50.0, opt, "gamma_quadrature");
}

double gamma_factor(const DephasingProfile& profile, double tau) {
    if (profile.method == DephasingMethod::AnalyticZeroT)
        return gamma_analytic_zero_t(profile.bath, tau);
    return gamma_quadrature(profile, tau);
}

double gamma_rate(const DephasingProfile& profile, double tau) {
    require_nonnegative_tau(tau, "gamma_rate");
    if (tau == 0.0) return 0.0;  // d/dt annihilates both factors of the integrand at t=0
    const SqueezedBathSpec& bath = profile.bath;
    if (profile.method == DephasingMethod::AnalyticZeroT) {
        const auto [ap, bp, cp] = coefficient_rates(tau);
        return bath.omega_c *
               (ap * std::cosh(2.0 * bath.r) -
                std::sinh(2.0 * bath.r) *
                    (bp * std::cos(bath.theta) + cp * std::sin(bath.theta))) /
               kTwoPi;
    }
    const double h = std::max(1e-5, 1e-4 * tau);
    const double lo = std::max(0.0, tau - h);
    const double hi = tau + h;
    return bath.omega_c * (gamma_quadrature(profile, hi) - gamma_quadrature(profile, lo)) /
           (hi - lo);
}

double attenuation(const DephasingProfile& profile, double tau) {
    double g = gamma_factor(profile, tau);
    if (g < 0.0) {
        if (g < -1e-12) {
            std::ostringstream msg;
            msg << "attenuation: Gamma(" << tau << ") = " << g << " is negative";
            throw NumericalError(msg.str());
        }
        g = 0.0;  // quadrature roundoff
    }
    return std::exp(-4.0 * g);
}

}  // namespace sqzd
