#pragma once

#include "kbeam/linear_core.hpp"
#include "kbeam/numerics.hpp"

namespace kbeam {

/// Principal eigenvalue of u'''' - A u'' = lambda u with hinged ends:
/// (1 + A / pi^2) pi^4. Throws DomainError for A < 0.
double principal_eigenvalue(double A);

/// (k pi)^4 + A (k pi)^2, the eigenvalue paired with A for mode sin(k pi x).
/// Throws DomainError for k == 0 or A < 0.
double eigenpair_lambda(unsigned k, double A);

/// Positive solution c sin(pi x) of u'''' - (a + b int (u')^2) u'' = lambda u.
struct EigenSolution {
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;
    double t0 = 0.0;  ///< int (u')^2, the root of principal_eigenvalue(a + b t0) = lambda
    double c = 0.0;   ///< amplitude sqrt(2 t0) / pi
    GridFunction u;
    unsigned k = 1;
};

/// Closed-form positive solution. Throws NoPositiveSolution when
/// lambda <= principal_eigenvalue(a) and ParameterDegenerate when b == 0.
EigenSolution solve_nonlinear_eigen(const ProblemParams& params, const Grid& grid = Grid());

/// Amplitude c(lambda) of the positive branch; same error contract.
double eigen_amplitude(const ProblemParams& params);

/// Feeds g = lambda u into the nonlocal solver and returns the sup-norm
/// distance between its answer and `sol.u`. Throws ConvergenceFailure when
/// the distance exceeds `tol`.
double cross_validate(const EigenSolution& sol, double tol = 1e-6);

/// Builds the closed-form solution first, so its errors propagate.
double cross_validate(const ProblemParams& params, const Grid& grid, double tol = 1e-6);

}  // namespace kbeam
