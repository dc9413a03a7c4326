// bath.hpp — dephasing factor of a squeezed thermal/vacuum reservoir
//
// All public time arguments are dimensionless, tau = omega_c * t. With the
// default omega_c = 1 scaled and physical time coincide.
#pragma once

#include <limits>

#include "sqzd/errors.hpp"

namespace sqzd {

// beta set to this value selects the zero-temperature (squeezed vacuum) bath.
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

enum class SpectralDensity { Ohmic };

// Squeezed thermal bath: squeezing strength r >= 0, squeezing phase theta
// (stored normalized into [0, 2pi)), inverse temperature beta (> 0 or
// infinite), cutoff frequency omega_c > 0.
struct SqueezedBathSpec {
    double r = 0.0;
    double theta = 0.0;
    double beta = kZeroTemperature;
    double omega_c = 1.0;
    SpectralDensity spectral = SpectralDensity::Ohmic;

    static SqueezedBathSpec make(double r, double theta,
                                 double beta = kZeroTemperature, double omega_c = 1.0,
                                 SpectralDensity spectral = SpectralDensity::Ohmic);
};

enum class DephasingMethod { AnalyticZeroT, Quadrature };

// Evaluation strategy for Gamma. AnalyticZeroT requires a zero-temperature
// Ohmic bath; Quadrature works for any supported bath.
struct DephasingProfile {
    SqueezedBathSpec bath;
    DephasingMethod method = DephasingMethod::AnalyticZeroT;
    double quad_rel_tol = 1e-10;
    double quad_abs_tol = 1e-15;

    static DephasingProfile analytic_zero_t(const SqueezedBathSpec& bath);
    static DephasingProfile quadrature(const SqueezedBathSpec& bath,
                                       double rel_tol = 1e-10, double abs_tol = 1e-15);
};

/// Closed-form dephasing factor Gamma(tau) for the zero-temperature Ohmic bath.
double gamma_analytic_zero_t(const SqueezedBathSpec& bath, double tau);

/// Gamma(tau) by adaptive quadrature of the spectral-density integral.
double gamma_quadrature(const DephasingProfile& profile, double tau);

/// Gamma(tau) dispatched on the profile's method.
double gamma_factor(const DephasingProfile& profile, double tau);

/// Dephasing rate dGamma/dt = omega_c * dGamma/dtau. Closed-form derivative in
/// analytic mode; central finite difference (h = max(1e-5, 1e-4 tau)) in
/// quadrature mode. Exactly zero at tau = 0.
double gamma_rate(const DephasingProfile& profile, double tau);

/// Coherence attenuation exp(-4 Gamma(tau)) in (0, 1].
double attenuation(const DephasingProfile& profile, double tau);

}  // namespace sqzd
