#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "kbeam/linear_core.hpp"

namespace kbeam {

enum class ConeFlag { kNonneg, kNonpos, kMixed };

std::string_view to_string(ConeFlag flag) noexcept;

/// Sign class of g. The zero function counts as nonnegative.
ConeFlag classify(const GridFunction& g) noexcept;

/// Solution of u'''' - (a + b int (u')^2) u'' = g with hinged ends.
struct SolveReport {
    GridFunction u;
    GridFunction w;                     ///< -u''
    double R = 0.0;                     ///< converged int (u')^2
    double fixed_point_gap = 0.0;       ///< |R - y_of_R(R)| with the quotient form of y
    double energy = 0.0;                ///< int u w of the returned solution
    std::size_t iterations = 0;         ///< bisection steps
    std::size_t doublings = 0;          ///< bracket growth steps
    std::pair<double, double> bracket;  ///< final enclosing interval for R
    double residual = 0.0;
    ConeFlag cone_flag = ConeFlag::kNonneg;
    /// Set when g changes sign: the fixed point may not be unique there, and
    /// the leftmost root of R - y(R) is returned.
    bool non_uniqueness_warning = false;
};

struct NonlocalOptions {
    double tol_R = 1e-10;
    double initial_upper = 1.0;
    std::size_t max_bisections = 60;
    /// Success requires residual <= residual_tol * (1 + ||g||).
    double residual_tol = 5e-2;
    /// Probe points used to pick the leftmost root for sign-changing g.
    std::size_t mixed_probe_points = 64;
};

/// Finds R* = y(R*) by bisection on R - y(R) and returns the matching
/// solution. y is evaluated as energy(u_R, w_R), the by-parts form that
/// the energy identity equates with [int g u_R - int w_R^2] / (a + bR). Throws InputError for non-finite g and ConvergenceFailure
/// when the bracket or the residual check fails.
SolveReport solve_nonlocal(const GridFunction& g, const ProblemParams& params,
                           const NonlocalOptions& options = {});

struct ProbeOptions {
    double tol_R = 1e-10;
    std::size_t max_steps = 10000;
};

struct ProbeResult {
    double spread = 0.0;          ///< max pairwise distance of the limits
    std::vector<double> limits;   ///< one per start
    std::vector<std::size_t> steps;
};

/// Runs R <- R + theta (y(R) - R) from every start (theta = 1, halved
/// whenever a step grows) and reports how far apart the limits are.
/// Throws ConvergenceFailure if any start fails to settle within max_steps.
ProbeResult verify_uniqueness_probe(const GridFunction& g, const ProblemParams& params,
                                    const std::vector<double>& starts, const ProbeOptions& options = {});

}  // namespace kbeam
