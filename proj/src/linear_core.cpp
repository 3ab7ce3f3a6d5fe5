#include "kbeam/linear_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kbeam/errors.hpp"

namespace kbeam {

void ProblemParams::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(lambda)) {
        throw DomainError("problem parameters must be finite");
    }
    if (a <= 0.0) throw DomainError("a must be positive, got " + std::to_string(a));
    if (b < 0.0) throw DomainError("b must be nonnegative, got " + std::to_string(b));
}

StiffnessParam ProblemParams::stiffness(double R) const {
    if (!(R >= 0.0)) throw DomainError("R must be nonnegative, got " + std::to_string(R));
    return StiffnessParam(a + b * R);
}

FixedRSolution solve_fixed_R(const GridFunction& g, const ProblemParams& params, double R) {
    params.validate();
    return solve_fixed_R(FactoredKernels(params.stiffness(R), g.grid()), g, R);
}

FixedRSolution solve_fixed_R(const FactoredKernels& kernels, const GridFunction& g, double R) {
    if (!g.all_finite()) throw InputError("right-hand side has non-finite values");
    GridFunction w = kernels.apply_k2(g);
    GridFunction u = kernels.apply_g1(w);
    const double e = energy(u, w);
    return {std::move(u), std::move(w), R, e};
}

double energy(const GridFunction& u, const GridFunction& w) { return integrate(u * w); }

double y_of_R(const GridFunction& g, const ProblemParams& params, double R) {
    return y_of_R(solve_fixed_R(g, params, R), g, params);
}

double y_of_R(const FixedRSolution& sol, const GridFunction& g, const ProblemParams& params) {
    const double m = params.stiffness(sol.R_in).value();
    return (integrate(g * sol.u) - integrate(sol.w * sol.w)) / m;
}

double residual(const GridFunction& u, const GridFunction& g, const ProblemParams& params, double R) {
    const double m = params.stiffness(R).value();
    const GridFunction d2u = second_difference(u);
    const GridFunction d4u = second_difference(d2u);
    const std::size_t n = u.size();
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        worst = std::max(worst, std::abs(d4u[i] - m * d2u[i] - g[i]));
    }
    return worst;
}

AprioriBounds apriori_bounds(const ProblemParams& params, const Grid& grid) {
    params.validate();
    const FactoredKernels kernels(params.stiffness(0.0), grid);
    const GridFunction one = GridFunction::constant(grid, 1.0);
    const GridFunction w = kernels.apply_k2(one);
    const GridFunction u = kernels.apply_g1(w);
    return {sup_norm(u), sup_norm(w)};
}

}  // namespace kbeam
