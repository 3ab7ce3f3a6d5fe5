#include "kbeam/eigen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kbeam/errors.hpp"
#include "kbeam/nonlocal_solver.hpp"

namespace kbeam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Validates the parameters and returns t0 = (lambda - pi^4 - a pi^2) / (b pi^2).
double energy_level(const ProblemParams& params) {
    params.validate();
    const double lambda1 = principal_eigenvalue(params.a);
    if (!(params.lambda > lambda1)) {
        throw NoPositiveSolution("lambda = " + std::to_string(params.lambda) +
                                 " does not exceed the principal eigenvalue " + std::to_string(lambda1));
    }
    if (params.b == 0.0) {
        throw ParameterDegenerate("b = 0 makes the eigenproblem linear; the amplitude is not determined");
    }
    return (params.lambda - lambda1) / (params.b * kPi2);
}

}  // namespace

double principal_eigenvalue(double A) { return eigenpair_lambda(1, A); }

double eigenpair_lambda(unsigned k, double A) {
    if (k == 0) throw DomainError("mode index must be positive");
    if (!(A >= 0.0)) throw DomainError("A must be nonnegative, got " + std::to_string(A));
    const double kp2 = static_cast<double>(k) * static_cast<double>(k) * kPi2;
    return kp2 * kp2 + A * kp2;
}

double eigen_amplitude(const ProblemParams& params) {
    return std::sqrt(2.0 * energy_level(params)) / kPi;
}

EigenSolution solve_nonlinear_eigen(const ProblemParams& params, const Grid& grid) {
    const double t0 = energy_level(params);
    const double c = std::sqrt(2.0 * t0) / kPi;
    GridFunction u = GridFunction::sample(grid, [c](double x) { return c * std::sin(kPi * x); });
    // sin(pi * 1.0) is 1.2e-16, not zero.
    u[0] = 0.0;
    u[grid.size() - 1] = 0.0;
    return {params.lambda, params.a, params.b, t0, c, std::move(u), 1};
}

double cross_validate(const EigenSolution& sol, double tol) {
    const ProblemParams params{sol.a, sol.b, sol.lambda};
    const SolveReport report = solve_nonlocal(sol.lambda * sol.u, params);
    const double distance = sup_norm(report.u - sol.u);
    if (!(distance <= tol)) {
        throw ConvergenceFailure("nonlocal solve differs from the closed form by " + std::to_string(distance));
    }
    return distance;
}

double cross_validate(const ProblemParams& params, const Grid& grid, double tol) {
    return cross_validate(solve_nonlinear_eigen(params, grid), tol);
}

}  // namespace kbeam
