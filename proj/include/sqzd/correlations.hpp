// correlations.hpp — mutual information, classical correlation, quantum discord
#pragma once

#include "sqzd/states.hpp"

namespace sqzd {

enum class ChiBranch { CThree, Omega };

struct ChiResult {
    double value = 0.0;
    ChiBranch branch = ChiBranch::CThree;
};

// One time point of a correlation trace. All information quantities in bits.
struct CorrelationRecord {
    double tau = 0.0;
    double gamma = 0.0;  // dephasing factor Gamma(tau)
    double alpha = 0.0;  // corner coherence (c1 - c2) exp(-4 Gamma)
    double mutual_info = 0.0;
    double classical = 0.0;
    double chi = 0.0;
    double discord = 0.0;
};

// Measurement direction on qubit B, vartheta in [0, pi/2], phi in [0, 2pi).
struct ProjectorParams {
    double vartheta = 0.0;
    double phi = 0.0;
};

/// I = 2 + sum_n mu_n log2 mu_n for a state with maximally mixed marginals.
double mutual_information_closed(const SpectrumRecord& spectrum);

/// chi = max(|c3|, (|alpha| + |c1 + c2|)/2); reports which branch won
/// (CThree at exact ties).
ChiResult chi(const XStateParams& params, double alpha);

/// C = sum_j [1 + (-1)^j chi]/2 * log2[1 + (-1)^j chi].
double classical_correlation_closed(double chi);

/// Assembles I, chi, C and Q = I - C for the given corner coherence. The tau
/// and gamma fields are left zero; trace() fills them.
CorrelationRecord discord_closed(const XStateParams& params, double alpha);

struct BruteForceOptions {
    int grid_vartheta = 200;
    int grid_phi = 200;
    double objective_tol = 1e-8;
};

struct BruteForceResult {
    double value = 0.0;
    ProjectorParams argmax;
};

/// Direct maximization of S(rho_A) - sum_k p_k S(rho_A|k) over projective
/// measurements on qubit B: coarse grid search plus coordinate-wise
/// golden-section refinement. Accepts any valid two-qubit density matrix.
BruteForceResult classical_correlation_bruteforce(const DensityMatrix4& rho,
                                                  const BruteForceOptions& opt = {});

/// S(rho_A) + S(rho_B) - S(rho_AB) from dense spectra (no X-state shortcut).
double mutual_information_generic(const DensityMatrix4& rho);

/// Q = I(rho) - max classical correlation, both by the generic routes above.
double discord_bruteforce(const DensityMatrix4& rho, const BruteForceOptions& opt = {});

}  // namespace sqzd
