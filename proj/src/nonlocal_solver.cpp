#include "kbeam/nonlocal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kbeam/bisection.hpp"
#include "kbeam/errors.hpp"

namespace kbeam {

namespace {

// The scalar map R -> int (u_R')^2 for a fixed g, reusing the
// stiffness-independent G1 matrix. It is evaluated in the by-parts form
// int u_R w_R, which equals y(R) up to quadrature error; using the same form
// as SolveReport::energy makes R* reproduce energy(u) to bisection accuracy
// even when that quadrature error is far above tol_R (large |g|).
class FixedPointMap {
public:
    FixedPointMap(const GridFunction& g, const ProblemParams& params)
        : g_(g), params_(params), g1w_(assemble_g1(g.grid())) {}

    FixedRSolution solution(double R) const {
        return solve_fixed_R(FactoredKernels(params_.stiffness(R), g1w_), g_, R);
    }

    double operator()(double R) const { return solution(R).energy; }

private:
    const GridFunction& g_;
    const ProblemParams& params_;
    KernelMatrix g1w_;
};

}  // namespace

std::string_view to_string(ConeFlag flag) noexcept {
    switch (flag) {
        case ConeFlag::kNonneg: return "nonneg";
        case ConeFlag::kNonpos: return "nonpos";
        case ConeFlag::kMixed: return "mixed";
    }
    return "mixed";
}

ConeFlag classify(const GridFunction& g) noexcept {
    bool has_pos = false;
    bool has_neg = false;
    for (double v : g.values()) {
        has_pos = has_pos || v > 0.0;
        has_neg = has_neg || v < 0.0;
    }
    if (has_pos && has_neg) return ConeFlag::kMixed;
    return has_neg ? ConeFlag::kNonpos : ConeFlag::kNonneg;
}

SolveReport solve_nonlocal(const GridFunction& g, const ProblemParams& params,
                           const NonlocalOptions& options) {
    params.validate();
    if (!g.all_finite()) throw InputError("right-hand side has non-finite values");
    if (!(options.tol_R > 0.0)) throw ConfigError("tol_R must be positive");

    const FixedPointMap y(g, params);
    const auto phi = [&](double R) { return R - y(R); };

    SolveReport report{.u = GridFunction(g.grid()), .w = GridFunction(g.grid()), .bracket = {0.0, 0.0}};
    report.cone_flag = classify(g);
    report.non_uniqueness_warning = report.cone_flag == ConeFlag::kMixed;

    double R = 0.0;
    const double phi0 = phi(0.0);
    if (phi0 >= 0.0) {
        // y(0) <= 0 only happens for g == 0 up to rounding; R = 0 is the root.
        report.bracket = {0.0, 0.0};
    } else {
        const BisectionOptions bopts{options.tol_R, options.max_bisections, 200};
        BisectionResult root;
        if (report.cone_flag == ConeFlag::kMixed) {
            // Grow the bracket first, then bisect the leftmost sign change.
            const BisectionResult grown = bisect_with_doubling(phi, 0.0, options.initial_upper,
                                                               BisectionOptions{1e300, 0, 200});
            double lo = 0.0;
            double hi = grown.hi;
            leftmost_sign_change(phi, log_probe(grown.hi, options.mixed_probe_points), lo, hi);
            root = bisect(phi, lo, hi, bopts);
            root.doublings = grown.doublings;
        } else {
            root = bisect_with_doubling(phi, 0.0, options.initial_upper, bopts);
        }
        R = root.root;
        report.iterations = root.bisections;
        report.doublings = root.doublings;
        report.bracket = {root.lo, root.hi};
        const double slack = options.tol_R + 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, R);
        if (!(std::abs(root.value_at_root) <= slack)) {
            throw ConvergenceFailure("bisection stopped with |R - energy(u_R)| = " +
                                     std::to_string(std::abs(root.value_at_root)));
        }
    }

    FixedRSolution sol = y.solution(R);
    report.fixed_point_gap = std::abs(R - y_of_R(sol, g, params));
    report.R = R;
    report.energy = sol.energy;
    report.u = std::move(sol.u);
    report.w = std::move(sol.w);
    report.residual = residual(report.u, g, params, R);
    if (!report.u.all_finite()) throw ConvergenceFailure("solution has non-finite values");
    if (report.residual > options.residual_tol * (1.0 + sup_norm(g))) {
        throw ConvergenceFailure("finite-difference residual " + std::to_string(report.residual) +
                                 " exceeds tolerance");
    }
    return report;
}

ProbeResult verify_uniqueness_probe(const GridFunction& g, const ProblemParams& params,
                                    const std::vector<double>& starts, const ProbeOptions& options) {
    params.validate();
    if (!g.all_finite()) throw InputError("right-hand side has non-finite values");
    const FixedPointMap y(g, params);

    ProbeResult out;
    for (double start : starts) {
        if (!(start >= 0.0)) throw DomainError("probe starts must be nonnegative");
        double R = start;
        double theta = 1.0;
        double prev_step = std::numeric_limits<double>::infinity();
        std::size_t step = 0;
        for (;; ++step) {
            if (step == options.max_steps) {
                throw ConvergenceFailure("uniqueness probe did not settle from R0 = " +
                                         std::to_string(start));
            }
            const double gap = y(R) - R;
            if (std::abs(gap) <= options.tol_R) break;
            if (std::abs(gap) > prev_step) theta *= 0.5;
            prev_step = std::abs(gap);
            R = std::max(0.0, R + theta * gap);
        }
        out.limits.push_back(R);
        out.steps.push_back(step);
    }
    for (std::size_t i = 0; i < out.limits.size(); ++i) {
        for (std::size_t j = i + 1; j < out.limits.size(); ++j) {
            out.spread = std::max(out.spread, std::abs(out.limits[i] - out.limits[j]));
        }
    }
    return out;
}

}  // namespace kbeam
