#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqzd/rootfind.hpp"

using namespace sqzd;

TEST_CASE("cubic root") {
    const double root = find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
    CHECK(std::abs(root - std::cbrt(2.0)) < 1e-11);
}

TEST_CASE("transcendental root") {
    const double root = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
    CHECK(std::abs(std::cos(root) - root) < 1e-11);
}

TEST_CASE("endpoint roots are returned directly") {
    CHECK(find_root([](double x) { return x; }, 0.0, 1.0) == 0.0);
    CHECK(find_root([](double x) { return x - 1.0; }, 0.0, 1.0) == 1.0);
}

TEST_CASE("unbracketed root throws") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    NumericalError);
}

TEST_CASE("bracket growth finds a sign change") {
    auto f = [](double x) { return 100.0 - x; };
    const auto [lo, hi] = grow_bracket_up(f, 0.0, 1.0);
    CHECK(f(lo) * f(hi) <= 0.0);
    CHECK(hi >= 100.0);
}

TEST_CASE("bracket growth gives up eventually") {
    CHECK_THROWS_AS(grow_bracket_up([](double) { return 1.0; }, 0.0, 1.0, 2.0, 40),
                    NumericalError);
}

TEST_CASE("tight tolerance is honored") {
    RootOptions opt;
    opt.x_tol = 1e-14;
    const double root =
        find_root([](double x) { return std::exp(x) - 3.0; }, 0.0, 2.0, opt);
    CHECK(std::abs(root - std::log(3.0)) < 1e-12);
}
