#include "sqzd/qsl.hpp"

#include <algorithm>
#include <cmath>

#include "sqzd/quad.hpp"

namespace sqzd {

double relative_purity_angle(const DensityMatrix4& rho0, const DensityMatrix4& rho_t) {
    const double purity = (rho0 * rho0).trace().real();
    if (!(purity > 0.0))
        throw std::domain_error("relative_purity_angle: Tr[rho_0^2] must be positive");
    const double overlap = (rho0 * rho_t).trace().real();
    const double ratio = std::clamp(overlap / purity, 0.0, 1.0);
    return std::acos(std::sqrt(ratio));
}

DensityMatrix4 liouvillian(const XStateParams& p, const DephasingProfile& profile,
                           double tau) {
    const double corner =
        -(p.c1 - p.c2) * gamma_rate(profile, tau) * attenuation(profile, tau) /
        profile.bath.omega_c;
    DensityMatrix4 out = DensityMatrix4::Zero();
    out(0, 3) = corner;
    out(3, 0) = corner;
    return out;
}

MatrixNorms operator_norms(const Eigen::Matrix4cd& m) {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
    const auto& sigma = svd.singularValues();
    MatrixNorms norms;
    for (int i = 0; i < sigma.size(); ++i) {
        norms.op = std::max(norms.op, sigma(i));
        norms.hs += sigma(i) * sigma(i);
        norms.tr += sigma(i);
    }
    norms.hs = std::sqrt(norms.hs);
    return norms;
}

QslRecord qsl_time(const XStateParams& p, const DephasingProfile& profile,
                   double drive_time) {
    if (!(drive_time > 0.0)) throw std::domain_error("qsl_time: drive time must be > 0");

    QslRecord rec;
    rec.drive_time = drive_time;
    const DensityMatrix4 rho0 = build_initial(p);
    rec.purity_0 = (rho0 * rho0).trace().real();
    const double att = attenuation(profile, drive_time);
    DensityMatrix4 rho_t;
    if (att > 0.0) {
        rho_t = evolve(p, att);
    } else {  // attenuation underflowed; corners are exactly gone
        rho_t = build_initial(p);
        rho_t(0, 3) = 0.0;
        rho_t(3, 0) = 0.0;
    }
    const double overlap = (rho0 * rho_t).trace().real();
    const double ratio = std::clamp(overlap / rec.purity_0, 0.0, 1.0);
    rec.theta_angle = std::acos(std::sqrt(ratio));

    const double corner = std::abs(p.c1 - p.c2);
    auto integrand = [&](double tau) {
        return corner * std::abs(gamma_rate(profile, tau)) * attenuation(profile, tau) /
               profile.bath.omega_c;
    };
    QuadOptions opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-14;
    rec.lambda_op =
        integrate_or_throw(integrand, 0.0, drive_time, opt, "qsl_time") / drive_time;

    if (rec.lambda_op < 1e-14) {
        rec.stationary = true;
        rec.tau_qsl = 0.0;
        return rec;
    }
    rec.tau_qsl = (1.0 - ratio) * rec.purity_0 / rec.lambda_op;
    return rec;
}

}  // namespace sqzd
