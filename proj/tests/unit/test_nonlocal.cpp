#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kbeam/errors.hpp"
#include "kbeam/nonlocal_solver.hpp"

using namespace kbeam;

namespace {

constexpr double kPi = std::numbers::pi;

// Scalar reduction for g = sin(pi x): u = c sin(pi x) with
// c = 1 / (pi^4 + (a + bR) pi^2) and R = c^2 pi^2 / 2.
long double sine_fixed_point(long double a, long double b) {
    const long double pi = std::numbers::pi_v<long double>;
    const auto phi = [&](long double R) {
        const long double c = 1.0L / (pi * pi * pi * pi + (a + b * R) * pi * pi);
        return R - c * c * pi * pi / 2.0L;
    };
    long double lo = 0.0L, hi = 1.0L;
    for (int k = 0; k < 200; ++k) {
        const long double mid = 0.5L * (lo + hi);
        (phi(mid) > 0.0L ? hi : lo) = mid;
    }
    return 0.5L * (lo + hi);
}

GridFunction sine(const Grid& grid, double scale = 1.0) {
    return GridFunction::sample(grid, [&](double x) { return scale * std::sin(kPi * x); });
}

}  // namespace

TEST_CASE("classify cones") {
    const Grid grid(33);
    CHECK(classify(GridFunction(grid)) == ConeFlag::kNonneg);
    CHECK(classify(sine(grid)) == ConeFlag::kNonneg);
    CHECK(classify(sine(grid, -1.0)) == ConeFlag::kNonpos);
    CHECK(classify(GridFunction::sample(grid, [](double x) { return x - 0.5; })) == ConeFlag::kMixed);
    CHECK(to_string(ConeFlag::kMixed) == "mixed");
}

TEST_CASE("sine load against the scalar oracle") {
    const Grid grid(257);
    const ProblemParams params{1.0, 1.0, 0.0};
    const SolveReport rep = solve_nonlocal(sine(grid), params);
    const double R_oracle = static_cast<double>(sine_fixed_point(1.0L, 1.0L));
    CHECK(R_oracle == doctest::Approx(4.2876e-4).epsilon(1e-4));
    CHECK(std::abs(rep.R - R_oracle) < 1e-8);
    CHECK(std::abs(rep.R - rep.energy) <= 1e-9);
    const double c = 1.0 / (std::pow(kPi, 4) + (1.0 + R_oracle) * kPi * kPi);
    CHECK(std::abs(sup_norm(rep.u) - c) < 1e-7);
    CHECK(std::abs(sup_norm(rep.u) - 9.32116e-3) < 1e-7);
    CHECK(rep.cone_flag == ConeFlag::kNonneg);
    CHECK_FALSE(rep.non_uniqueness_warning);
    CHECK(rep.bracket.first <= rep.R);
    CHECK(rep.R <= rep.bracket.second);
    CHECK(rep.residual <= 5e-2 * 2.0);
}

TEST_CASE("zero load") {
    const Grid grid(129);
    const SolveReport rep = solve_nonlocal(GridFunction(grid), ProblemParams{1.0, 1.0, 0.0});
    CHECK(rep.R == 0.0);
    CHECK(sup_norm(rep.u) == 0.0);
}

TEST_CASE("negated load negates u and keeps R") {
    const Grid grid(257);
    const ProblemParams params{1.0, 1.0, 0.0};
    const SolveReport pos = solve_nonlocal(sine(grid), params);
    const SolveReport neg = solve_nonlocal(sine(grid, -1.0), params);
    CHECK(neg.cone_flag == ConeFlag::kNonpos);
    CHECK(std::abs(neg.R - pos.R) < 1e-12);
    CHECK(sup_norm(neg.u + pos.u) < 1e-12);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(neg.u[i] <= 0.0);
}

TEST_CASE("non-finite load is rejected") {
    const Grid grid(33);
    GridFunction g = sine(grid);
    g[5] = std::nan("");
    CHECK_THROWS_AS(solve_nonlocal(g, ProblemParams{1.0, 1.0, 0.0}), InputError);
}

TEST_CASE("mixed load sets the warning and still solves") {
    const Grid grid(129);
    const GridFunction g = GridFunction::sample(grid, [](double x) { return 300.0 * std::sin(2 * kPi * x); });
    const ProblemParams params{1.0, 1.0, 0.0};
    const SolveReport rep = solve_nonlocal(g, params);
    CHECK(rep.cone_flag == ConeFlag::kMixed);
    CHECK(rep.non_uniqueness_warning);
    CHECK(std::abs(rep.R - rep.energy) < 1e-9);
    const double gn = sup_norm(g);
    CHECK(std::abs(rep.R - y_of_R(g, params, rep.R)) <= 1e-8 * (1 + gn * gn));
}

TEST_CASE("large loads need bracket doubling") {
    const Grid grid(257);
    const ProblemParams params{1.0, 1.0, 0.0};
    const SolveReport rep = solve_nonlocal(sine(grid, 1e4), params);
    CHECK(rep.doublings > 0);
    const double exact = static_cast<double>([] {
        const long double pi = std::numbers::pi_v<long double>;
        long double lo = 0, hi = 1e6;
        for (int k = 0; k < 300; ++k) {
            const long double R = 0.5L * (lo + hi);
            const long double c = 1e4L / (pi * pi * pi * pi + (1 + R) * pi * pi);
            (R - c * c * pi * pi / 2 > 0 ? hi : lo) = R;
        }
        return 0.5L * (lo + hi);
    }());
    CHECK(rep.R == doctest::Approx(exact).epsilon(5e-7));
}

TEST_CASE("fixed-point consistency and cone preservation on smooth loads") {
    const Grid grid(129);
    const ProblemParams params{0.5, 3.0, 0.0};
    for (double amp : {0.1, 1.0, 50.0}) {
        const GridFunction g = GridFunction::sample(grid, [&](double x) { return amp * (1 + x * x); });
        const SolveReport rep = solve_nonlocal(g, params);
        CHECK(std::abs(rep.R - rep.energy) <= 10 * 1e-10);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(rep.u[i] >= 0.0);
            CHECK(rep.w[i] >= 0.0);
        }
        CHECK(y_of_R(g, params, 0.0) > 0.0);
    }
}

TEST_CASE("uniqueness probe examples") {
    const Grid grid(257);
    const ProblemParams params{1.0, 1.0, 0.0};
    const ProbeResult p = verify_uniqueness_probe(sine(grid), params, {0.0, 1.0, 10.0});
    CHECK(p.spread <= 1e-9);
    REQUIRE(p.limits.size() == 3);

    const ProbeResult z = verify_uniqueness_probe(GridFunction(grid), params, {0.0, 3.0});
    for (double r : z.limits) CHECK(r == doctest::Approx(0.0).epsilon(1e-15));

    const ProblemParams local{1.0, 0.0, 0.0};
    const ProbeResult b0 = verify_uniqueness_probe(sine(grid), local, {0.0, 1.0, 10.0});
    // With b = 0 the stiffness is frozen, so one step lands on energy(u_0).
    const double y0 = solve_fixed_R(sine(grid), local, 0.0).energy;
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(b0.limits[k] == doctest::Approx(y0).epsilon(1e-12));
        CHECK(b0.steps[k] <= 2);
    }
}

TEST_CASE("mesh self-convergence of R*") {
    const ProblemParams params{1.0, 1.0, 0.0};
    const double R_exact = static_cast<double>(sine_fixed_point(1.0L, 1.0L));
    NonlocalOptions opts;
    opts.tol_R = 1e-16;
    double prev = 0.0;
    for (std::size_t n : {65u, 129u, 257u}) {
        const Grid grid(n);
        const double err = std::abs(solve_nonlocal(sine(grid), params, opts).R - R_exact);
        if (prev > 0.0) CHECK(std::log2(prev / err) >= 3.5);
        prev = err;
    }
}
