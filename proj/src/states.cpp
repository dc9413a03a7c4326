#include "sqzd/states.hpp"

#include <cmath>
#include <sstream>

namespace sqzd {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double clamp_eigenvalue(double mu, const char* where) {
    if (mu < -1e-10) {
        std::ostringstream msg;
        msg << where << ": eigenvalue " << mu << " below the -1e-10 floor";
        throw NumericalError(msg.str());
    }
    return mu < 0.0 ? 0.0 : mu;
}

}  // namespace

XStateParams XStateParams::make(double c1, double c2, double c3) {
    auto check_range = [](double c, const char* name) {
        if (!(std::abs(c) <= 1.0)) {
            std::ostringstream msg;
            msg << "XStateParams: |" << name << "| <= 1 violated (" << name << " = " << c << ")";
            throw ConfigError(msg.str());
        }
    };
    check_range(c1, "c1");
    check_range(c2, "c2");
    check_range(c3, "c3");
    if (1.0 + c3 < std::abs(c1 - c2)) {
        std::ostringstream msg;
        msg << "XStateParams: 1 + c3 >= |c1 - c2| violated (1 + c3 = " << 1.0 + c3
            << ", |c1 - c2| = " << std::abs(c1 - c2) << ")";
        throw ConfigError(msg.str());
    }
    if (1.0 - c3 < std::abs(c1 + c2)) {
        std::ostringstream msg;
        msg << "XStateParams: 1 - c3 >= |c1 + c2| violated (1 - c3 = " << 1.0 - c3
            << ", |c1 + c2| = " << std::abs(c1 + c2) << ")";
        throw ConfigError(msg.str());
    }
    return {c1, c2, c3};
}

DensityMatrix4 build_initial(const XStateParams& p) { return evolve(p, 1.0); }

DensityMatrix4 evolve(const XStateParams& p, double attenuation) {
    if (!(attenuation > 0.0) || !(attenuation <= 1.0)) {
        std::ostringstream msg;
        msg << "evolve: attenuation must lie in (0, 1], got " << attenuation;
        throw std::domain_error(msg.str());
    }
    const double corner = (p.c1 - p.c2) * attenuation / 4.0;
    const double inner = (p.c1 + p.c2) / 4.0;
    const double diag_outer = (1.0 + p.c3) / 4.0;
    const double diag_inner = (1.0 - p.c3) / 4.0;
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(0, 0) = diag_outer;
    rho(1, 1) = diag_inner;
    rho(2, 2) = diag_inner;
    rho(3, 3) = diag_outer;
    rho(0, 3) = corner;
    rho(3, 0) = corner;
    rho(1, 2) = inner;
    rho(2, 1) = inner;
    return rho;
}

SpectrumRecord eigenvalues_closed(const XStateParams& p, double alpha) {
    if (std::abs(alpha) > std::abs(p.c1 - p.c2) + 1e-12) {
        std::ostringstream msg;
        msg << "eigenvalues_closed: |alpha| = " << std::abs(alpha) << " exceeds |c1 - c2| = "
            << std::abs(p.c1 - p.c2);
        throw std::domain_error(msg.str());
    }
    const double inner = p.c1 + p.c2;
    return {{(1.0 + p.c3 - alpha) / 4.0, (1.0 + p.c3 + alpha) / 4.0,
             (1.0 - p.c3 - inner) / 4.0, (1.0 - p.c3 + inner) / 4.0}};
}

SpectrumRecord dense_spectrum(const DensityMatrix4& rho) {
    Eigen::SelfAdjointEigenSolver<DensityMatrix4> solver(rho, Eigen::EigenvaluesOnly);
    SpectrumRecord out;
    for (int i = 0; i < 4; ++i) out.mu[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

double von_neumann_entropy(const SpectrumRecord& spectrum) {
    double s = 0.0;
    for (double mu : spectrum.mu) s -= xlog2x(clamp_eigenvalue(mu, "von_neumann_entropy"));
    return s;
}

double von_neumann_entropy(const DensityMatrix4& rho) {
    return von_neumann_entropy(dense_spectrum(rho));
}

Eigen::Matrix2cd reduced_qubit_a(const DensityMatrix4& rho) {
    Eigen::Matrix2cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

Eigen::Matrix2cd reduced_qubit_b(const DensityMatrix4& rho) {
    Eigen::Matrix2cd out;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            out(m, n) = rho(m, n) + rho(2 + m, 2 + n);
    return out;
}

void validate_density_matrix(const DensityMatrix4& rho, double herm_tol, double trace_tol,
                             double eig_floor) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian: max |rho - rho^dag| = " << herm;
        throw NumericalError(msg.str());
    }
    const double trace_dev = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_dev > trace_tol) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from 1 by " << trace_dev;
        throw NumericalError(msg.str());
    }
    const SpectrumRecord spec = dense_spectrum(rho);
    for (double mu : spec.mu) {
        if (mu < eig_floor) {
            std::ostringstream msg;
            msg << "density matrix has eigenvalue " << mu << " below floor " << eig_floor;
            throw NumericalError(msg.str());
        }
    }
}

}  // namespace sqzd
