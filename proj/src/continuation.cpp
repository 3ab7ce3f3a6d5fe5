#include "kbeam/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "kbeam/eigen.hpp"
#include "kbeam/errors.hpp"

namespace kbeam {

namespace {

void for_each_index(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
}

// Runs `solve` and folds the library's error classes into a sample status.
template <class Solve>
BranchSample guarded(double lambda, Solve&& solve) {
    BranchSample sample;
    sample.lambda = lambda;
    try {
        solve(sample);
        sample.status = SampleStatus::kConverged;
    } catch (const NoPositiveSolution& e) {
        sample.status = SampleStatus::kNoSolution;
        sample.message = e.what();
    } catch (const Error& e) {
        sample.status = SampleStatus::kFailed;
        sample.message = e.what();
    }
    return sample;
}

}  // namespace

std::string_view to_string(SampleStatus status) noexcept {
    switch (status) {
        case SampleStatus::kConverged: return "converged";
        case SampleStatus::kNoSolution: return "no_solution";
        case SampleStatus::kFailed: return "failed";
    }
    return "failed";
}

std::vector<BranchSample> sweep_eigen(double a, double b, const std::vector<double>& lambdas,
                                      const SweepOptions& options) {
    std::vector<BranchSample> out(lambdas.size());
    for_each_index(lambdas.size(), options.threads, [&](std::size_t i) {
        out[i] = guarded(lambdas[i], [&](BranchSample& s) {
            const EigenSolution sol = solve_nonlinear_eigen(ProblemParams{a, b, lambdas[i]}, options.grid);
            s.sup_norm = sup_norm(sol.u);
            s.R = sol.t0;
            s.iterations = 0;
        });
    });
    return out;
}

std::vector<BranchSample> sweep_sublinear(double a, double b, const NonlinearitySpec& spec,
                                          const std::vector<double>& lambdas, const SweepOptions& options) {
    std::vector<BranchSample> out(lambdas.size());
    for_each_index(lambdas.size(), options.threads, [&](std::size_t i) {
        out[i] = guarded(lambdas[i], [&](BranchSample& s) {
            const SublinearReport rep =
                solve_sublinear(ProblemParams{a, b, lambdas[i]}, spec, options.grid, options.sublinear);
            s.sup_norm = sup_norm(rep.u);
            s.R = rep.R;
            s.iterations = rep.outer_iterations;
        });
    });
    return out;
}

std::vector<double> lambda_grid(double lo, double hi, std::size_t count, bool log_spaced) {
    std::vector<double> out;
    if (count == 0) return out;
    if (count == 1) return {lo};
    if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw ConfigError("log-spaced lambda grid needs positive ends");
    for (std::size_t k = 0; k < count; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(log_spaced ? std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)))
                                 : lo + frac * (hi - lo));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace kbeam
