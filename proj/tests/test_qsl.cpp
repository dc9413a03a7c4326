#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqzd/qsl.hpp"

using namespace sqzd;

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

DephasingProfile analytic(double r, double theta) {
    return DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(r, theta));
}

// Tr[rho0 rho_t] expanded by hand for the X-state pair
double overlap_closed(const XStateParams& p, double alpha_t) {
    const double c3p = 1.0 + p.c3, c3m = 1.0 - p.c3;
    return (c3p * c3p + c3m * c3m + (p.c1 + p.c2) * (p.c1 + p.c2) +
            (p.c1 - p.c2) * alpha_t) /
           8.0;
}

}  // namespace

TEST_CASE("relative purity angle basics") {
    const auto p = XStateParams::make(0.5, 0.0, 0.3);
    const auto rho0 = build_initial(p);
    CHECK(relative_purity_angle(rho0, rho0) == 0.0);

    // stationary family: the angle stays zero for all attenuations
    const auto flat = XStateParams::make(0.4, 0.4, 0.2);
    CHECK(relative_purity_angle(build_initial(flat), evolve(flat, 0.3)) == 0.0);
}

TEST_CASE("matrix overlap equals the hand-expanded closed form") {
    for (double att : {1.0, 0.7, 0.2}) {
        for (const auto& p : {XStateParams::make(0.5, 0.0, 0.3),
                              XStateParams::make(0.9, 0.6, -0.6),
                              XStateParams::make(-0.3, 0.4, 0.1)}) {
            const double alpha_t = (p.c1 - p.c2) * att;
            const double generic =
                (build_initial(p) * evolve(p, att)).trace().real();
            CHECK(std::abs(generic - overlap_closed(p, alpha_t)) < 1e-12);
        }
    }
}

TEST_CASE("liouvillian reference values") {
    const auto p = XStateParams::make(0.5, 0.0, 0.3);

    // stationary state: zero generator
    const auto flat = liouvillian(XStateParams::make(0.3, 0.3, 0.1), analytic(0.5, 1.0), 2.0);
    CHECK(flat.cwiseAbs().maxCoeff() == 0.0);

    // gamma(0) = 0 makes the generator vanish at tau = 0
    CHECK(liouvillian(p, analytic(0.0, 0.0), 0.0).cwiseAbs().maxCoeff() == 0.0);

    // frozen corner magnitude 0.5 * (1/2pi) * 2^{-2/pi}
    const auto gen = liouvillian(p, analytic(0.0, 0.0), 1.0);
    CHECK(std::abs(gen(0, 3).real()) ==
          doctest::Approx(0.051185681345258179).epsilon(1e-12));
    CHECK(gen(0, 3).real() < 0.0);  // coherence decays
}

TEST_CASE("liouvillian matches finite differences of evolve") {
    const auto p = XStateParams::make(0.7, 0.1, 0.2);
    for (double r : {0.0, 0.5})
        for (double tau : {0.5, 1.0, 3.0}) {
            const auto profile = analytic(r, 1.2);
            const double h = 1e-6;
            const DensityMatrix4 fd =
                (evolve(p, attenuation(profile, tau + h)) -
                 evolve(p, attenuation(profile, tau - h))) /
                (2.0 * h);
            const DensityMatrix4 gen = liouvillian(p, profile, tau);
            CHECK((gen - fd).cwiseAbs().maxCoeff() <
                  1e-6 * std::max(1e-3, fd.cwiseAbs().maxCoeff()));
        }
}

TEST_CASE("operator norms") {
    const auto zero = operator_norms(Eigen::Matrix4cd::Zero());
    CHECK(zero.op == 0.0);
    CHECK(zero.hs == 0.0);
    CHECK(zero.tr == 0.0);

    Eigen::Matrix4cd corner = Eigen::Matrix4cd::Zero();
    corner(0, 3) = 1.0;
    corner(3, 0) = 1.0;
    const auto norms = operator_norms(corner);
    CHECK(norms.op == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norms.hs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(norms.tr == doctest::Approx(2.0).epsilon(1e-12));

    // norm ordering tr >= hs >= op on an arbitrary Hermitian matrix
    Eigen::Matrix4cd h;
    h << 1.0, 0.2, 0.0, 0.3, 0.2, -0.5, 0.1, 0.0, 0.0, 0.1, 0.7, 0.2, 0.3, 0.0, 0.2, -0.1;
    const auto hn = operator_norms(h);
    CHECK(hn.tr >= hn.hs);
    CHECK(hn.hs >= hn.op);
}

TEST_CASE("operator norm of the generator equals the corner magnitude") {
    const auto p = XStateParams::make(0.5, 0.0, 0.3);
    const auto profile = analytic(0.5, kPi / 2);
    for (double tau : {0.5, 1.0, 2.0}) {
        const double expected = std::abs(p.c1 - p.c2) * gamma_rate(profile, tau) *
                                attenuation(profile, tau);
        CHECK(operator_norms(liouvillian(p, profile, tau)).op ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("qsl_time on stationary states") {
    const auto rec = qsl_time(XStateParams::make(0.4, 0.4, 0.2), analytic(0.5, 1.0), 1.0);
    CHECK(rec.stationary);
    CHECK(rec.tau_qsl == 0.0);
    CHECK(rec.theta_angle == 0.0);
}

TEST_CASE("lambda quadrature equals the closed form when gamma >= 0") {
    const auto p = XStateParams::make(0.5, 0.0, 0.3);
    for (double r : {0.1, 0.5, 1.0})
        for (double theta : {0.0, kPi / 2, 2.76, 4.4})
            for (double tau : {0.5, 1.0, 2.0}) {
                const auto profile = analytic(r, theta);
                const auto rec = qsl_time(p, profile, tau);
                const double closed =
                    std::abs(p.c1 - p.c2) * (1.0 - attenuation(profile, tau)) / (4.0 * tau);
                CHECK(std::abs(rec.lambda_op - closed) < 1e-8);
            }
}

TEST_CASE("the bound never exceeds the drive time") {
    for (double c1 : {0.2, 0.5, 0.65})
        for (double r : {0.0, 0.5, 1.0})
            for (double tau : {0.3, 1.0, 5.0}) {
                const auto rec =
                    qsl_time(XStateParams::make(c1, 0.0, 0.3), analytic(r, 1.0), tau);
                CHECK(rec.tau_qsl >= 0.0);
                CHECK(rec.tau_qsl <= tau + 1e-9);
            }
}

TEST_CASE("for this bath the bound reduces to tau |c1 - c2| / 2 exactly") {
    // gamma(t) >= 0 for the zero-temperature Ohmic squeezed bath, so the
    // numerator and denominator share the factor (1 - e^{-4 Gamma(tau)}) and
    // every squeezing dependence cancels.
    for (double c1 : {0.35, 0.5, 0.65})
        for (double r : {0.05, 0.18, 0.5, 1.0})
            for (double theta : {0.0, 1.0, 2.76, kPi, 5.5}) {
                const auto rec =
                    qsl_time(XStateParams::make(c1, 0.0, 0.3), analytic(r, theta), 1.0);
                CHECK(std::abs(rec.tau_qsl - 0.5 * c1) < 1e-7);
            }
}

TEST_CASE("qsl input validation") {
    CHECK_THROWS_AS(qsl_time(XStateParams::make(0.5, 0.0, 0.3), analytic(0.5, 0.0), 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(qsl_time(XStateParams::make(0.5, 0.0, 0.3), analytic(0.5, 0.0), -1.0),
                    std::domain_error);
}
