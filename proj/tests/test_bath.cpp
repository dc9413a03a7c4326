#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sqzd/bath.hpp"

using namespace sqzd;

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Independent oracle: composite Simpson at fixed, very fine resolution over
// the same integrand, written without reference to the library's quadrature.
double gamma_simpson(double r, double theta, double tau, long intervals = 1 << 21) {
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(-x) * (1.0 - std::cos(x * tau)) / x *
               (ch - sh * std::cos(x * tau - theta)) / kPi;
    };
    const double a = 0.0, b = 50.0;
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = f(a) + f(b);
    for (long i = 1; i < intervals; ++i) sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

DephasingProfile quad_profile(double r, double theta, double beta = kZeroTemperature) {
    return DephasingProfile::quadrature(SqueezedBathSpec::make(r, theta, beta));
}

}  // namespace

TEST_CASE("Gamma vanishes at tau = 0") {
    const auto bath = SqueezedBathSpec::make(0.7, 1.3);
    CHECK(gamma_analytic_zero_t(bath, 0.0) == 0.0);
    CHECK(gamma_quadrature(quad_profile(0.7, 1.3), 0.0) == 0.0);
    CHECK(attenuation(DephasingProfile::analytic_zero_t(bath), 0.0) == 1.0);
}

TEST_CASE("unsqueezed value at tau = 1 is ln2/(2 pi)") {
    const auto bath = SqueezedBathSpec::make(0.0, 0.0);
    const double expected = std::log(2.0) / (2.0 * kPi);  // 0.1103178000763258
    CHECK(std::abs(gamma_analytic_zero_t(bath, 1.0) - expected) < 1e-15);
    CHECK(std::abs(gamma_quadrature(quad_profile(0.0, 0.0), 1.0) - expected) < 1e-10);
}

TEST_CASE("squeezed values match the fixed-resolution oracle") {
    struct Case {
        double r, theta, tau, frozen;
    };
    // frozen values computed from the oracle below at 2^23 intervals
    const std::vector<Case> cases = {
        {0.5, 0.0, 1.0, 0.14936097880119796},
        {0.5, kPi / 2, 1.0, 0.08350903916066815},
    };
    for (const auto& c : cases) {
        const auto bath = SqueezedBathSpec::make(c.r, c.theta);
        const double analytic = gamma_analytic_zero_t(bath, c.tau);
        CHECK(std::abs(analytic - c.frozen) < 1e-13);
        CHECK(std::abs(gamma_simpson(c.r, c.theta, c.tau) - analytic) < 1e-10);
        CHECK(std::abs(gamma_quadrature(quad_profile(c.r, c.theta), c.tau) - analytic) < 1e-8);
    }
}

TEST_CASE("quadrature agrees with the closed form across the squeezing grid") {
    for (double r : {0.0, 0.25, 0.5, 1.0})
        for (double theta : {0.0, kPi / 4, kPi / 2, kPi}) {
            const auto bath = SqueezedBathSpec::make(r, theta);
            const auto profile = quad_profile(r, theta);
            for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                const double gap =
                    std::abs(gamma_quadrature(profile, tau) - gamma_analytic_zero_t(bath, tau));
                CHECK(gap < 1e-8);
            }
        }
}

TEST_CASE("gamma_rate closed form and finite differences agree") {
    const auto bath = SqueezedBathSpec::make(0.0, 0.0);
    const auto profile = DephasingProfile::analytic_zero_t(bath);
    CHECK(gamma_rate(profile, 0.0) == 0.0);
    CHECK(std::abs(gamma_rate(profile, 1.0) - 1.0 / (2.0 * kPi)) < 1e-14);

    for (double r : {0.0, 0.5, 1.0})
        for (double theta : {0.0, 2.0, kPi}) {
            const auto p = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(r, theta));
            for (double tau : {0.2, 1.0, 3.0, 10.0}) {
                const double h = 1e-6 * std::max(1.0, tau);
                const double fd = (gamma_analytic_zero_t(p.bath, tau + h) -
                                   gamma_analytic_zero_t(p.bath, tau - h)) /
                                  (2.0 * h);
                CHECK(gamma_rate(p, tau) ==
                      doctest::Approx(fd).epsilon(1e-5));
            }
        }
}

TEST_CASE("gamma_rate in quadrature mode tracks the analytic derivative") {
    const auto analytic = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.5, 1.0));
    const auto quad = quad_profile(0.5, 1.0);
    for (double tau : {0.5, 1.0, 4.0})
        CHECK(gamma_rate(quad, tau) == doctest::Approx(gamma_rate(analytic, tau)).epsilon(1e-5));
}

TEST_CASE("rate stays positive far into the tail") {
    const auto profile = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.5, kPi));
    CHECK(gamma_rate(profile, 50.0) > 0.0);
}

TEST_CASE("attenuation value and limits") {
    const auto profile = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.0, 0.0));
    CHECK(std::abs(attenuation(profile, 1.0) - std::pow(2.0, -2.0 / kPi)) < 1e-14);
    // (1 + tau^2)^(-2/pi) decays to zero, slowly at r = 0
    CHECK(attenuation(profile, 1e2) < attenuation(profile, 1.0));
    CHECK(attenuation(profile, 1e4) < attenuation(profile, 1e2));
    CHECK(attenuation(profile, 1e4) < 1e-4);
}

TEST_CASE("theta is normalized, Gamma is 2pi-periodic in theta") {
    for (double theta : {0.5, 3.0, 5.5}) {
        const auto a = SqueezedBathSpec::make(0.8, theta);
        const auto b = SqueezedBathSpec::make(0.8, theta + 2.0 * kPi);
        CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-15));
        CHECK(gamma_analytic_zero_t(a, 2.3) == gamma_analytic_zero_t(b, 2.3));
    }
    CHECK(SqueezedBathSpec::make(0.0, -kPi / 2).theta ==
          doctest::Approx(1.5 * kPi).epsilon(1e-15));
}

TEST_CASE("Gamma is nonnegative and monotone on the tested grid") {
    for (double r : {0.0, 0.3, 0.7, 1.0})
        for (double theta : {0.0, 1.0, 2.0, 3.0, 4.5, 6.0}) {
            const auto bath = SqueezedBathSpec::make(r, theta);
            double prev = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double tau = 50.0 * i / 1000.0;
                const double g = gamma_analytic_zero_t(bath, tau);
                CHECK(g >= 0.0);
                CHECK(g >= prev - 1e-10);
                prev = g;
            }
        }
}

TEST_CASE("finite-temperature quadrature is self-consistent") {
    const double zero_t = gamma_quadrature(quad_profile(0.3, 1.0), 1.0);
    // beta -> infinity limit approaches the zero-temperature value from above
    const double cold = gamma_quadrature(quad_profile(0.3, 1.0, 1e8), 1.0);
    const double warm = gamma_quadrature(quad_profile(0.3, 1.0, 5.0), 1.0);
    CHECK(std::abs(cold - zero_t) < 1e-8);
    CHECK(warm > zero_t);
}

TEST_CASE("domain and configuration errors") {
    const auto bath = SqueezedBathSpec::make(0.5, 0.0);
    CHECK_THROWS_AS(gamma_analytic_zero_t(bath, -0.1), std::domain_error);
    CHECK_THROWS_AS(gamma_quadrature(quad_profile(0.5, 0.0), -1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_rate(DephasingProfile::analytic_zero_t(bath), -1.0),
                    std::domain_error);

    CHECK_THROWS_AS(SqueezedBathSpec::make(-0.1, 0.0), ConfigError);
    CHECK_THROWS_AS(SqueezedBathSpec::make(0.1, 0.0, -2.0), ConfigError);
    CHECK_THROWS_AS(SqueezedBathSpec::make(0.1, 0.0, kZeroTemperature, 0.0), ConfigError);

    const auto thermal = SqueezedBathSpec::make(0.5, 0.0, 2.0);
    CHECK_THROWS_AS(DephasingProfile::analytic_zero_t(thermal), ConfigError);
    CHECK_THROWS_AS(gamma_analytic_zero_t(thermal, 1.0), ConfigError);
    CHECK_THROWS_AS(gamma_quadrature(DephasingProfile::analytic_zero_t(bath), 1.0),
                    ConfigError);
}

TEST_CASE("quadrature reports non-convergence") {
    auto profile = quad_profile(0.5, 0.0);
    profile.quad_rel_tol = 1e-16;
    profile.quad_abs_tol = 0.0;
    // unreachable tolerance must surface as NumericalError, not a silent value
    CHECK_THROWS_AS(gamma_quadrature(profile, 3.0), NumericalError);
}
