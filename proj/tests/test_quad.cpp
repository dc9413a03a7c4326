#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqzd/quad.hpp"

using namespace sqzd;

TEST_CASE("polynomials are exact for a single panel") {
    auto res = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
    CHECK(res.converged);
    CHECK(res.value == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("exponential with known antiderivative") {
    auto res = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0);
    CHECK(res.converged);
    CHECK(std::abs(res.value - (1.0 - std::exp(-50.0))) < 1e-13);
}

TEST_CASE("oscillatory integrand with exponential cutoff") {
    // int_0^inf e^{-x} (1 - cos(bx))/x dx = (1/2) ln(1 + b^2)
    const double b = 5.0;
    auto f = [b](double x) {
        if (x < 1e-12) return 0.0;
        return std::exp(-x) * (1.0 - std::cos(b * x)) / x;
    };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    auto res = integrate(f, 0.0, 60.0, opt);
    CHECK(res.converged);
    CHECK(std::abs(res.value - 0.5 * std::log1p(b * b)) < 1e-11);
}

TEST_CASE("kinked integrand still converges") {
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    auto res = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, opt);
    CHECK(res.converged);
    CHECK(std::abs(res.value - (0.09 + 0.49) / 2.0) < 1e-11);
}

TEST_CASE("zero-width interval") {
    auto res = integrate([](double x) { return x; }, 1.0, 1.0);
    CHECK(res.converged);
    CHECK(res.value == 0.0);
}

TEST_CASE("panel budget exhaustion is reported, not hidden") {
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    opt.abs_tol = 0.0;
    opt.max_panels = 2;
    auto res = integrate([](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); },
                         0.0, 40.0, opt);
    CHECK(!res.converged);
    CHECK(res.error > 0.0);
    CHECK_THROWS_AS(integrate_or_throw(
                        [](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); },
                        0.0, 40.0, opt, "test"),
                    NumericalError);
}
