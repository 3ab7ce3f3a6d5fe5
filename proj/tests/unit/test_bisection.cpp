#include <cmath>

#include "doctest.h"
#include "kbeam/bisection.hpp"
#include "kbeam/errors.hpp"

using namespace kbeam;

TEST_CASE("bisect finds a bracketed root") {
    const auto phi = [](double x) { return x * x - 2.0; };
    const BisectionResult r = bisect(phi, 0.0, 2.0, {1e-14, 200, 0});
    CHECK(std::abs(r.root - std::sqrt(2.0)) < 1e-13);
    CHECK(r.lo <= r.root);
    CHECK(r.root <= r.hi);
    CHECK(phi(r.lo) <= 0.0);
    CHECK(phi(r.hi) > 0.0);
}

TEST_CASE("bisect_with_doubling grows the bracket") {
    const auto phi = [](double x) { return x - 300.0; };
    const BisectionResult r = bisect_with_doubling(phi, 0.0, 1.0, {1e-10, 100, 50});
    CHECK(r.doublings == 9);  // 512 is the first power of two above 300
    CHECK(std::abs(r.root - 300.0) < 1e-9);
}

TEST_CASE("bisect_with_doubling gives up on a function that never turns positive") {
    const auto phi = [](double) { return -1.0; };
    CHECK_THROWS_AS(bisect_with_doubling(phi, 0.0, 1.0, {1e-10, 60, 20}), ConvergenceFailure);
}

TEST_CASE("leftmost sign change among probes") {
    // Roots at 1, 2 and 3: phi crosses upward at 1 and 3.
    const auto phi = [](double x) { return (x - 1.0) * (x - 2.0) * (x - 3.0); };
    double lo = 0.0, hi = 0.0;
    CHECK(leftmost_sign_change(phi, {0.0, 0.5, 1.5, 2.5, 3.5}, lo, hi));
    CHECK(lo == 0.5);
    CHECK(hi == 1.5);
    CHECK_FALSE(leftmost_sign_change([](double) { return -1.0; }, {0.0, 1.0, 2.0}, lo, hi));
}

TEST_CASE("log probe layout") {
    const auto p = log_probe(8.0, 64);
    REQUIRE(p.size() == 64);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(8e-12));
    CHECK(p.back() == 8.0);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
}
