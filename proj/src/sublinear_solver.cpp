#include "kbeam/sublinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kbeam/bisection.hpp"
#include "kbeam/errors.hpp"

namespace kbeam {

namespace {

bool in_unit_interval(double v) { return v > 0.0 && v < 1.0; }

// Iterates v <- H(v) with H(v) = K12 (lambda f(v)) for one stiffness.
InnerSolution iterate_fixed_stiffness(const FactoredKernels& kernels, const NonlinearitySpec& spec,
                                      double lambda, const InnerOptions& options) {
    const Grid& grid = kernels.grid();
    const auto H = [&](const GridFunction& v) { return kernels.apply_k12(lambda * f_eval(spec, v)); };

    GridFunction v = options.start ? *options.start : H(GridFunction::constant(grid, 1.0));
    if (!(v.grid() == grid)) throw ConfigError("inner start lives on a different grid");
    if (options.observer) options.observer(v);
    for (std::size_t k = 1; k <= options.max_iter; ++k) {
        GridFunction next = H(v);
        if (options.observer) options.observer(next);
        const double step = sup_norm(next - v);
        v = std::move(next);
        if (step <= options.tol) return {std::move(v), k};
        if (!std::isfinite(step)) break;
    }
    throw ConvergenceFailure("inner iteration did not converge in " + std::to_string(options.max_iter) +
                                 " steps",
                             v.data());
}

class OuterMap {
public:
    OuterMap(const ProblemParams& params, const NonlinearitySpec& spec, const Grid& grid,
             const SublinearOptions& options)
        : params_(params), spec_(spec), options_(options), g1w_(assemble_g1(grid)) {}

    struct Point {
        GridFunction u;
        GridFunction w;
        double energy;
        std::size_t iterations;
    };

    Point evaluate(double R) const {
        const FactoredKernels kernels(params_.stiffness(R), g1w_);
        InnerOptions inner;
        inner.tol = options_.inner_tol;
        inner.max_iter = options_.inner_max_iter;
        inner.start = options_.inner_start;
        InnerSolution sol = iterate_fixed_stiffness(kernels, spec_, params_.lambda, inner);
        GridFunction w = kernels.apply_k2(params_.lambda * f_eval(spec_, sol.u));
        const double e = energy(sol.u, w);
        inner_iterations_.push_back(sol.iterations);
        return {std::move(sol.u), std::move(w), e, sol.iterations};
    }

    double gap(double R) const { return R - evaluate(R).energy; }

    std::vector<std::size_t>& inner_iterations() const { return inner_iterations_; }

private:
    const ProblemParams& params_;
    const NonlinearitySpec& spec_;
    const SublinearOptions& options_;
    KernelMatrix g1w_;
    mutable std::vector<std::size_t> inner_iterations_;
};

}  // namespace

NonlinearitySpec NonlinearitySpec::power_sum(double c1, double p, double c2, double q) {
    if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
        throw DomainError("power-sum coefficients must be finite and nonnegative");
    }
    if (c1 * c1 + c2 * c2 == 0.0) throw DomainError("power-sum needs c1^2 + c2^2 != 0");
    if (c1 > 0.0 && !in_unit_interval(p)) throw DomainError("exponent p must lie in (0,1)");
    if (c2 > 0.0 && !in_unit_interval(q)) throw DomainError("exponent q must lie in (0,1)");
    NonlinearitySpec spec;
    spec.c1_ = c1;
    spec.p_ = p;
    spec.c2_ = c2;
    spec.q_ = q;
    spec.alpha_ = std::max(c1 > 0.0 ? p : 0.0, c2 > 0.0 ? q : 0.0);
    return spec;
}

NonlinearitySpec NonlinearitySpec::identity() {
    NonlinearitySpec spec;
    spec.identity_ = true;
    spec.c1_ = 1.0;
    spec.p_ = 1.0;
    spec.alpha_ = 1.0;
    return spec;
}

NonlinearitySpec NonlinearitySpec::with_alpha(double alpha) const {
    NonlinearitySpec spec = *this;
    spec.alpha_ = alpha;
    return spec;
}

double f_eval(const NonlinearitySpec& spec, double s) {
    if (spec.is_identity()) return s;
    const double sp = std::max(s, 0.0);
    double out = 0.0;
    if (spec.c1() > 0.0) out += spec.c1() * std::pow(sp, spec.p());
    if (spec.c2() > 0.0) out += spec.c2() * std::pow(sp, spec.q());
    return out;
}

GridFunction f_eval(const NonlinearitySpec& spec, const GridFunction& u) {
    GridFunction out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = f_eval(spec, u[i]);
    return out;
}

bool check_alpha_concavity(const NonlinearitySpec& spec, std::size_t samples) {
    const double alpha = spec.alpha();
    if (!in_unit_interval(alpha)) throw DomainError("alpha must lie in (0,1)");
    if (samples < 2) throw ConfigError("need at least 2 lattice samples per axis");

    std::vector<double> s(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(samples - 1);
        s[j] = 1e3 * std::pow(10.0, -9.0 * (1.0 - frac));
    }
    s.back() = 1e3;
    for (std::size_t j = 1; j < samples; ++j) {
        if (f_eval(spec, s[j]) < f_eval(spec, s[j - 1])) return false;
    }
    for (std::size_t k = 1; k <= samples; ++k) {
        const double tau = static_cast<double>(k) / static_cast<double>(samples + 1);
        const double scale = std::pow(tau, alpha);
        for (double sj : s) {
            if (f_eval(spec, tau * sj) < scale * f_eval(spec, sj) - 1e-12) return false;
        }
    }
    return true;
}

InnerSolution inner_solve(const ProblemParams& params, const NonlinearitySpec& spec, double R,
                          const Grid& grid, const InnerOptions& options) {
    params.validate();
    if (params.lambda < 0.0) throw DomainError("inner iteration needs lambda >= 0");
    return iterate_fixed_stiffness(FactoredKernels(params.stiffness(R), grid), spec, params.lambda, options);
}

SublinearReport solve_sublinear(const ProblemParams& params, const NonlinearitySpec& spec, const Grid& grid,
                                const SublinearOptions& options) {
    params.validate();
    if (params.lambda < 0.0) {
        throw NoPositiveSolution("no positive solution exists for lambda = " + std::to_string(params.lambda) +
                                 " < 0");
    }
    if (spec.is_identity() || !check_alpha_concavity(spec, 32)) {
        throw DomainError("nonlinearity is not increasing and alpha-concave");
    }
    if (!(options.tol_R > 0.0)) throw ConfigError("tol_R must be positive");

    SublinearReport report{
        .u = GridFunction(grid), .w = GridFunction(grid), .inner_iterations = {}, .bracket = {0.0, 0.0}};
    if (params.lambda == 0.0) {
        report.trivial = true;
        return report;
    }

    const OuterMap map(params, spec, grid, options);
    double R = 0.0;
    if (options.method == OuterMethod::kBisection) {
        const BisectionOptions bopts{options.tol_R, options.max_bisections, 200};
        const BisectionResult root =
            bisect_with_doubling([&](double r) { return map.gap(r); }, 0.0, options.initial_upper, bopts);
        R = root.root;
        report.outer_iterations = root.bisections + root.doublings;
        report.bracket = {root.lo, root.hi};
    } else {
        R = std::max(0.0, options.initial_R);
        double theta = 1.0;
        double prev = std::numeric_limits<double>::infinity();
        std::size_t step = 0;
        for (;; ++step) {
            if (step == options.max_direct_steps) {
                throw ConvergenceFailure("direct outer iteration did not settle");
            }
            const double gap = map.evaluate(R).energy - R;
            if (std::abs(gap) <= options.tol_R) break;
            if (std::abs(gap) > prev) theta *= 0.5;
            prev = std::abs(gap);
            R = std::max(0.0, R + theta * gap);
        }
        report.outer_iterations = step;
        report.bracket = {R, R};
    }

    OuterMap::Point point = map.evaluate(R);
    report.R = R;
    report.energy = point.energy;
    report.u = std::move(point.u);
    report.w = std::move(point.w);
    report.inner_iterations = std::move(map.inner_iterations());
    report.residual = residual(report.u, params.lambda * f_eval(spec, report.u), params, R);
    if (!std::isfinite(report.residual) ||
        report.residual > options.residual_tol * (1.0 + params.lambda)) {
        throw ConvergenceFailure("finite-difference residual " + std::to_string(report.residual) +
                                 " exceeds tolerance");
    }
    return report;
}

}  // namespace kbeam
