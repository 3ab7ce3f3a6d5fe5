#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kbeam/linear_core.hpp"

namespace kbeam {

/// Right-hand side nonlinearity: either the power sum c1 s^p + c2 s^q with
/// exponents in (0,1), or the identity f(s) = s.
class NonlinearitySpec {
public:
    /// Throws DomainError unless c1, c2 >= 0, c1^2 + c2^2 != 0 and every
    /// exponent with a nonzero coefficient lies in (0,1). When c2 == 0 the
    /// value of q is ignored.
    static NonlinearitySpec power_sum(double c1, double p, double c2 = 0.0, double q = 0.5);
    static NonlinearitySpec identity();

    bool is_identity() const noexcept { return identity_; }
    double c1() const noexcept { return c1_; }
    double p() const noexcept { return p_; }
    double c2() const noexcept { return c2_; }
    double q() const noexcept { return q_; }

    /// Concavity exponent. Defaults to the largest active exponent (1 for
    /// the identity).
    double alpha() const noexcept { return alpha_; }
    NonlinearitySpec with_alpha(double alpha) const;

private:
    NonlinearitySpec() = default;

    bool identity_ = false;
    double c1_ = 0.0;
    double p_ = 0.5;
    double c2_ = 0.0;
    double q_ = 0.5;
    double alpha_ = 0.5;
};

/// f(s) evaluated at the positive part of s (identity: f(s) = s).
double f_eval(const NonlinearitySpec& spec, double s);

/// f applied nodewise.
GridFunction f_eval(const NonlinearitySpec& spec, const GridFunction& u);

/// Checks f(tau s) >= tau^alpha f(s) - 1e-12 and monotonicity of f on a
/// samples x samples lattice of (tau, s) in (0,1) x (0, 1e3].
/// Throws DomainError when alpha is outside (0,1).
bool check_alpha_concavity(const NonlinearitySpec& spec, std::size_t samples = 64);

struct InnerOptions {
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    /// First iterate; H(1) when empty.
    std::optional<GridFunction> start;
    /// Called with every iterate, including the start.
    std::function<void(const GridFunction&)> observer;
};

struct InnerSolution {
    GridFunction u;
    std::size_t iterations = 0;
};

/// Fixed point of H(v) = K12_{a+bR} (lambda f(v+)) by successive iteration.
/// Throws DomainError for lambda < 0 or R < 0 and ConvergenceFailure (with
/// the last iterate) after max_iter steps.
InnerSolution inner_solve(const ProblemParams& params, const NonlinearitySpec& spec, double R,
                          const Grid& grid = Grid(), const InnerOptions& options = {});

struct SublinearReport {
    GridFunction u;
    GridFunction w;                            ///< -u''
    double R = 0.0;
    double energy = 0.0;                       ///< int u w of the returned solution
    std::vector<std::size_t> inner_iterations; ///< one per outer step
    std::size_t outer_iterations = 0;
    std::pair<double, double> bracket;
    double residual = 0.0;
    bool trivial = false;                      ///< lambda == 0, u == 0
};

enum class OuterMethod {
    kBisection,        ///< bisection on R - energy(u_R) with a doubling bracket
    kDirectIteration,  ///< damped R <- energy(u_R)
};

struct SublinearOptions {
    double tol_R = 1e-8;
    double inner_tol = 1e-12;
    std::size_t inner_max_iter = 10000;
    double initial_upper = 1.0;
    std::size_t max_bisections = 60;
    std::size_t max_direct_steps = 10000;
    double initial_R = 0.0;  ///< start of the direct iteration
    OuterMethod method = OuterMethod::kBisection;
    /// Start for every inner solve; H(1) when empty.
    std::optional<GridFunction> inner_start;
    /// When finite, a residual above residual_tol * (1 + lambda) is reported
    /// as ConvergenceFailure. Off by default: near the boundary u^p has
    /// unbounded derivatives, so the stencil residual decays slowly with h
    /// and grows with lambda regardless of how well the iteration converged.
    double residual_tol = std::numeric_limits<double>::infinity();
};

/// Positive solution of u'''' - (a + b int (u')^2) u'' = lambda f(u).
/// Throws NoPositiveSolution for lambda < 0, DomainError when the spec fails
/// check_alpha_concavity, ConvergenceFailure when an iteration stalls.
SublinearReport solve_sublinear(const ProblemParams& params, const NonlinearitySpec& spec,
                                const Grid& grid = Grid(), const SublinearOptions& options = {});

}  // namespace kbeam
