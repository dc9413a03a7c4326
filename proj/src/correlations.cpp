#include "sqzd/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace sqzd {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kTwoPi = 2.0 * kPi;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of a unit-trace Hermitian 2x2 matrix from its characteristic roots.
double entropy2(const Eigen::Matrix2cd& m) {
    const double t = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::max(0.0, t * t - 4.0 * det);
    const double s = std::sqrt(disc);
    const double l1 = std::clamp(0.5 * (t + s), 0.0, 1.0);
    const double l2 = std::clamp(0.5 * (t - s), 0.0, 1.0);
    return -xlog2x(l1) - xlog2x(l2);
}

// Measurement objective S(rho_A) - sum_k p_k S(rho_A|k) at angles (vt, ph).
class MeasurementObjective {
public:
    explicit MeasurementObjective(const DensityMatrix4& rho)
        : rho_(rho), entropy_a_(entropy2(reduced_qubit_a(rho))) {}

    double operator()(double vt, double ph) const {
        using cd = std::complex<double>;
        const cd phase(std::cos(ph), std::sin(ph));
        // |v1> = cos vt |g> + e^{i phi} sin vt |e>, |v2> orthogonal; component
        // order (e, g) to match the basis {|ee>,|eg>,|ge>,|gg>}.
        const cd v1[2] = {phase * std::sin(vt), cd(std::cos(vt), 0.0)};
        const cd v2[2] = {cd(-std::cos(vt), 0.0), std::conj(phase) * std::sin(vt)};
        double objective = entropy_a_;
        for (const auto& v : {v1, v2}) {
            Eigen::Matrix2cd cond;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    cd acc = 0.0;
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            acc += std::conj(v[m]) * rho_(2 * i + m, 2 * j + n) * v[n];
                    cond(i, j) = acc;
                }
            const double p = cond.trace().real();
            if (p > 1e-14) objective -= p * entropy2(Eigen::Matrix2cd(cond / p));
            // degenerate branch (p ~ 0) contributes nothing
        }
        return objective;
    }

private:
    const DensityMatrix4& rho_;
    double entropy_a_;
};

// Golden-section maximization of f on [lo, hi]; returns the argmax.
template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 80) {
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-14; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double mutual_information_closed(const SpectrumRecord& spectrum) {
    double info = 2.0;
    for (double mu : spectrum.mu) {
        if (mu < -1e-10) {
            std::ostringstream msg;
            msg << "mutual_information_closed: eigenvalue " << mu << " below -1e-10";
            throw NumericalError(msg.str());
        }
        info += xlog2x(std::max(0.0, mu));
    }
    return info;
}

ChiResult chi(const XStateParams& p, double alpha) {
    if (std::abs(alpha) > std::abs(p.c1 - p.c2) + 1e-12) {
        std::ostringstream msg;
        msg << "chi: |alpha| = " << std::abs(alpha) << " exceeds |c1 - c2| = "
            << std::abs(p.c1 - p.c2);
        throw std::domain_error(msg.str());
    }
    const double omega = 0.5 * (std::abs(alpha) + std::abs(p.c1 + p.c2));
    const double c3 = std::abs(p.c3);
    if (omega > c3) return {omega, ChiBranch::Omega};
    return {c3, ChiBranch::CThree};
}

double classical_correlation_closed(double chi_value) {
    if (!(chi_value >= 0.0) || !(chi_value <= 1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "classical_correlation_closed: chi must lie in [0, 1], got " << chi_value;
        throw std::domain_error(msg.str());
    }
    chi_value = std::min(chi_value, 1.0);
    return 0.5 * (xlog2x(1.0 - chi_value) + xlog2x(1.0 + chi_value));
}

CorrelationRecord discord_closed(const XStateParams& p, double alpha) {
    CorrelationRecord rec;
    rec.alpha = alpha;
    rec.mutual_info = mutual_information_closed(eigenvalues_closed(p, alpha));
    const ChiResult x = chi(p, alpha);
    rec.chi = x.value;
    rec.classical = classical_correlation_closed(x.value);
    rec.discord = rec.mutual_info - rec.classical;
    if (rec.discord < -1e-10 || rec.classical < -1e-10) {
        std::ostringstream msg;
        msg << "discord_closed: negative correlation (Q = " << rec.discord
            << ", C = " << rec.classical << ")";
        throw NumericalError(msg.str());
    }
    return rec;
}

BruteForceResult classical_correlation_bruteforce(const DensityMatrix4& rho,
                                                  const BruteForceOptions& opt) {
    validate_density_matrix(rho, 1e-10, 1e-10, -1e-9);
    if (opt.grid_vartheta < 2 || opt.grid_phi < 1)
        throw ConfigError("classical_correlation_bruteforce: grid must be at least 2x1");
    const MeasurementObjective objective(rho);

    const double dvt = kHalfPi / (opt.grid_vartheta - 1);
    const double dph = kTwoPi / opt.grid_phi;
    double best = -1.0, best_vt = 0.0, best_ph = 0.0;
    for (int i = 0; i < opt.grid_vartheta; ++i) {
        const double vt = i * dvt;
        for (int j = 0; j < opt.grid_phi; ++j) {
            const double ph = j * dph;
            const double val = objective(vt, ph);
            if (val > best) {
                best = val;
                best_vt = vt;
                best_ph = ph;
            }
        }
    }

    // coordinate-wise golden-section refinement around the best grid cell
    double span_vt = dvt, span_ph = dph;
    for (int sweep = 0; sweep < 40; ++sweep) {
        const double prev = best;
        best_vt = golden_max(
            [&](double vt) { return objective(vt, best_ph); },
            std::max(0.0, best_vt - span_vt), std::min(kHalfPi, best_vt + span_vt));
        best_ph = golden_max(
            [&](double ph) { return objective(best_vt, ph); },
            best_ph - span_ph, best_ph + span_ph);
        best = objective(best_vt, best_ph);
        if (best - prev < opt.objective_tol * 0.01) break;
        span_vt *= 0.5;
        span_ph *= 0.5;
    }
    if (best_ph < 0.0) best_ph += kTwoPi;
    if (best_ph >= kTwoPi) best_ph -= kTwoPi;
    return {best, {best_vt, best_ph}};
}

double mutual_information_generic(const DensityMatrix4& rho) {
    const double s_a = entropy2(reduced_qubit_a(rho));
    const double s_b = entropy2(reduced_qubit_b(rho));
    return s_a + s_b - von_neumann_entropy(rho);
}

double discord_bruteforce(const DensityMatrix4& rho, const BruteForceOptions& opt) {
    return mutual_information_generic(rho) - classical_correlation_bruteforce(rho, opt).value;
}

}  // namespace sqzd
