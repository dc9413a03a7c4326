// qsl.hpp — quantum-speed-limit bound for the dephasing evolution
//
// Works in scaled time tau = omega_c * t throughout: lambda_op is per unit
// tau and tau_qsl is a scaled time, so the bound tau_qsl <= drive_time reads
// directly off the record.
#pragma once

#include "sqzd/dynamics.hpp"

namespace sqzd {

struct MatrixNorms {
    double op = 0.0;  // largest singular value
    double hs = 0.0;  // Frobenius
    double tr = 0.0;  // sum of singular values
};

struct QslRecord {
    double theta_angle = 0.0;  // generalized Bloch angle Theta(rho_0, rho_tau)
    double lambda_op = 0.0;    // time-averaged operator norm of the generator
    double tau_qsl = 0.0;
    double purity_0 = 0.0;  // Tr[rho_0^2]
    double drive_time = 0.0;
    bool stationary = false;
};

/// Theta = arccos sqrt(Tr[rho_0 rho_t] / Tr[rho_0^2]); the ratio is clamped
/// to [0, 1] against roundoff.
double relative_purity_angle(const DensityMatrix4& rho0, const DensityMatrix4& rho_t);

/// Generator L(rho_tau) = d rho / d tau: zero except the corner entries
/// -(c1 - c2) gamma(tau) exp(-4 Gamma(tau)).
DensityMatrix4 liouvillian(const XStateParams& params, const DephasingProfile& profile,
                           double tau);

MatrixNorms operator_norms(const Eigen::Matrix4cd& m);

/// Relative-purity bound: tau_qsl = sin^2(Theta) Tr[rho_0^2] / Lambda_op with
/// Lambda_op = (1/tau) \int_0^tau |c1 - c2| |dGamma/dtau'| e^{-4 Gamma} dtau'.
/// Stationary states (Lambda_op < 1e-14) report tau_qsl = 0 with the flag set.
QslRecord qsl_time(const XStateParams& params, const DephasingProfile& profile,
                   double drive_time);

}  // namespace sqzd
