#pragma once

#include "kbeam/kernels.hpp"
#include "kbeam/numerics.hpp"

namespace kbeam {

/// Constants of u'''' - (a + b int (u')^2) u'' = lambda f(u).
struct ProblemParams {
    double a = 1.0;
    double b = 0.0;
    double lambda = 0.0;

    /// Throws DomainError unless a > 0, b >= 0 and all three are finite.
    void validate() const;

    /// The stiffness a + bR. Throws DomainError for negative R.
    StiffnessParam stiffness(double R) const;
};

/// Solution of the fixed-R problem u'''' - (a + bR) u'' = g.
struct FixedRSolution {
    GridFunction u;
    GridFunction w;  ///< -u''
    double R_in = 0.0;
    double energy = 0.0;  ///< int (u')^2 = int u w
};

/// u = K12 g, w = K2 g with stiffness a + bR.
FixedRSolution solve_fixed_R(const GridFunction& g, const ProblemParams& params, double R);

/// Same, reusing kernels already assembled for stiffness a + bR.
FixedRSolution solve_fixed_R(const FactoredKernels& kernels, const GridFunction& g, double R);

/// y(R) = [int g u_R - int w_R^2] / (a + bR).
double y_of_R(const GridFunction& g, const ProblemParams& params, double R);

/// y(R) evaluated from an existing fixed-R solution.
double y_of_R(const FixedRSolution& sol, const GridFunction& g, const ProblemParams& params);

/// int u w, the by-parts form of int (u')^2 under zero boundary values.
double energy(const GridFunction& u, const GridFunction& w);

/// Sup-norm of D2(D2 u) - (a + bR) D2 u - g over the nodes whose nested
/// stencil stays clear of the boundary (the boundary node and the two next
/// to it are skipped at each end).
double residual(const GridFunction& u, const GridFunction& g, const ProblemParams& params, double R);

/// Kernel-derived constants with ||u_R|| <= c1 ||g|| and ||u_R''|| <= c2 ||g||
/// for every R >= 0. Both are row-sum maxima of the operators at m = a.
struct AprioriBounds {
    double c1 = 0.0;
    double c2 = 0.0;
};

AprioriBounds apriori_bounds(const ProblemParams& params, const Grid& grid);

}  // namespace kbeam
