#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kbeam {

struct BisectionOptions {
    double tol = 1e-10;              ///< stop once the bracket is this narrow
    std::size_t max_bisections = 60;
    std::size_t max_doublings = 200;
};

struct BisectionResult {
    double root = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double value_at_root = 0.0;
    std::size_t bisections = 0;
    std::size_t doublings = 0;
};

/// Root of an increasing-through-zero function phi on [lo, infinity).
///
/// Requires phi(lo) <= 0. The upper end starts at `upper` and doubles until
/// phi(upper) > 0, then the bracket is halved until it is narrower than
/// `tol` or `max_bisections` halvings were spent. Throws ConvergenceFailure
/// when no positive value is found within `max_doublings` doublings.
BisectionResult bisect_with_doubling(const std::function<double(double)>& phi, double lo,
                                     double upper, const BisectionOptions& options);

/// Leftmost sign change of phi among the probe points (assumed increasing),
/// returned as a bracket [p_k, p_{k+1}] with phi(p_k) <= 0 < phi(p_{k+1}).
/// Returns false when there is none.
bool leftmost_sign_change(const std::function<double(double)>& phi, const std::vector<double>& probes,
                          double& lo, double& hi);

/// Bisection on a known bracket phi(lo) <= 0 < phi(hi).
BisectionResult bisect(const std::function<double(double)>& phi, double lo, double hi,
                       const BisectionOptions& options);

/// 0 followed by count-1 points log-spaced from upper * 1e-12 to upper.
std::vector<double> log_probe(double upper, std::size_t count);

}  // namespace kbeam
