// states.hpp — two-qubit X states and their common-bath dephasing evolution
//
// Basis order is fixed as {|ee>, |eg>, |ge>, |gg>} (qubit A major).
#pragma once

#include <Eigen/Dense>
#include <array>

#include "sqzd/errors.hpp"

namespace sqzd {

using DensityMatrix4 = Eigen::Matrix4cd;

// Bloch-diagonal correlation triple (c1, c2, c3) of a state with maximally
// mixed marginals. make() enforces |ci| <= 1 and positivity of the state.
struct XStateParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    static XStateParams make(double c1, double c2, double c3);
};

// Spectrum in the closed-form order: mu1,2 = [1 + c3 -/+ alpha]/4,
// mu3,4 = [1 - c3 -/+ (c1 + c2)]/4.
struct SpectrumRecord {
    std::array<double, 4> mu{};
};

/// (1/4)[I + sum_i c_i sigma_i (x) sigma_i].
DensityMatrix4 build_initial(const XStateParams& params);

/// The dephased state: corners scaled by `attenuation` in (0, 1], diagonal and
/// inner block unchanged.
DensityMatrix4 evolve(const XStateParams& params, double attenuation);

/// Closed-form spectrum of the evolved state with corner coherence alpha.
SpectrumRecord eigenvalues_closed(const XStateParams& params, double alpha);

/// Eigensolver route; eigenvalues in ascending order.
SpectrumRecord dense_spectrum(const DensityMatrix4& rho);

/// Von Neumann entropy in bits (0 log 0 = 0). Eigenvalues in [-1e-10, 0) are
/// clamped to zero; more negative values raise NumericalError.
double von_neumann_entropy(const SpectrumRecord& spectrum);
double von_neumann_entropy(const DensityMatrix4& rho);

Eigen::Matrix2cd reduced_qubit_a(const DensityMatrix4& rho);
Eigen::Matrix2cd reduced_qubit_b(const DensityMatrix4& rho);

/// Hermiticity / unit trace / positivity check; throws NumericalError naming
/// the violated invariant.
void validate_density_matrix(const DensityMatrix4& rho, double herm_tol = 1e-12,
                             double trace_tol = 1e-12, double eig_floor = -1e-10);

}  // namespace sqzd
