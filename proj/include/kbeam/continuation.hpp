#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kbeam/numerics.hpp"
#include "kbeam/sublinear_solver.hpp"

namespace kbeam {

enum class SampleStatus { kConverged, kNoSolution, kFailed };

std::string_view to_string(SampleStatus status) noexcept;

/// One point of a bifurcation diagram.
struct BranchSample {
    double lambda = 0.0;
    double sup_norm = 0.0;
    double R = 0.0;
    std::size_t iterations = 0;
    SampleStatus status = SampleStatus::kFailed;
    std::string message;  ///< reason for no_solution / failed
};

struct SweepOptions {
    /// Worker threads; samples are independent and the output order always
    /// follows the lambda grid.
    std::size_t threads = 1;
    Grid grid;
    SublinearOptions sublinear;
};

/// Positive branch of the nonlinear eigenproblem, one closed-form solve per
/// lambda. Samples at lambda <= principal_eigenvalue(a) are no_solution.
std::vector<BranchSample> sweep_eigen(double a, double b, const std::vector<double>& lambdas,
                                      const SweepOptions& options = {});

/// Positive branch for a power-sum nonlinearity. lambda < 0 is no_solution;
/// lambda == 0 is the converged trivial solution.
std::vector<BranchSample> sweep_sublinear(double a, double b, const NonlinearitySpec& spec,
                                          const std::vector<double>& lambdas, const SweepOptions& options = {});

/// `count` points from lo to hi, log-spaced (lo, hi > 0) or linear.
std::vector<double> lambda_grid(double lo, double hi, std::size_t count, bool log_spaced);

}  // namespace kbeam
