#include "kbeam/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kbeam/continuation.hpp"
#include "kbeam/eigen.hpp"
#include "kbeam/errors.hpp"
#include "kbeam/nonlocal_solver.hpp"
#include "kbeam/sublinear_solver.hpp"

namespace kbeam::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

GridFunction builtin_rhs(const std::string& name, const Grid& grid) {
    if (name == "sin-pi") return GridFunction::sample(grid, [](double x) { return std::sin(kPi * x); });
    if (name == "neg-sin-pi") return GridFunction::sample(grid, [](double x) { return -std::sin(kPi * x); });
    if (name == "const") return GridFunction::constant(grid, 1.0);
    if (name == "zero") return GridFunction(grid);
    throw ConfigError("unknown right-hand side '" + name + "' (expected sin-pi, const, neg-sin-pi, zero)");
}

ProblemParams params_of(const RunConfig& c) { return ProblemParams{c.a, c.b, c.lambda}; }

NonlinearitySpec spec_of(const RunConfig& c) { return NonlinearitySpec::power_sum(c.c1, c.p, c.c2, c.q); }

std::string solution_csv(const GridFunction& u, const GridFunction& w) {
    std::string out = "x,u,w\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        out += format_number(u.grid().node(i)) + ',' + format_number(u[i]) + ',' + format_number(w[i]) + '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<BranchSample>& samples) {
    std::string out = "lambda,sup_norm,R,iterations,status\n";
    for (const BranchSample& s : samples) {
        out += format_number(s.lambda) + ',' + format_number(s.sup_norm) + ',' + format_number(s.R) + ',' +
               std::to_string(s.iterations) + ',' + std::string(to_string(s.status)) + '\n';
    }
    return out;
}

void run_linear(const RunConfig& c, RunResult& out) {
    const Grid grid(c.n);
    const GridFunction g = builtin_rhs(c.g, grid);
    const ProblemParams params = params_of(c);
    params.validate();
    const FixedRSolution sol = solve_fixed_R(g, params, c.R);
    out.report["result"] = {
        {"status", "converged"},
        {"R", c.R},
        {"energy", sol.energy},
        {"y_of_R", y_of_R(sol, g, params)},
        {"sup_norm", sup_norm(sol.u)},
        {"iterations", 0},
        {"residual", residual(sol.u, g, params, c.R)},
        {"cone_flag", std::string(to_string(classify(g)))},
    };
    out.csv = solution_csv(sol.u, sol.w);
}

void run_nonlocal(const RunConfig& c, RunResult& out) {
    const Grid grid(c.n);
    const GridFunction g = builtin_rhs(c.g, grid);
    NonlocalOptions opts;
    if (c.tol_R > 0.0) opts.tol_R = c.tol_R;
    const SolveReport rep = solve_nonlocal(g, params_of(c), opts);
    out.report["result"] = {
        {"status", "converged"},
        {"R", rep.R},
        {"energy", rep.energy},
        {"fixed_point_gap", rep.fixed_point_gap},
        {"sup_norm", sup_norm(rep.u)},
        {"iterations", rep.iterations},
        {"doublings", rep.doublings},
        {"bracket", {rep.bracket.first, rep.bracket.second}},
        {"residual", rep.residual},
        {"cone_flag", std::string(to_string(rep.cone_flag))},
        {"non_uniqueness_warning", rep.non_uniqueness_warning},
        {"tol_R", opts.tol_R},
    };
    out.csv = solution_csv(rep.u, rep.w);
}

void run_eigen(const RunConfig& c, RunResult& out) {
    const Grid grid(c.n);
    const ProblemParams params = params_of(c);
    const EigenSolution sol = solve_nonlinear_eigen(params, grid);
    const GridFunction w = kPi * kPi * sol.u;
    out.report["result"] = {
        {"status", "converged"},
        {"lambda_1a", principal_eigenvalue(c.a)},
        {"t0", sol.t0},
        {"c", sol.c},
        {"k", sol.k},
        {"R", sol.t0},
        {"sup_norm", sup_norm(sol.u)},
        {"iterations", 0},
        {"residual", residual(sol.u, c.lambda * sol.u, params, sol.t0)},
    };
    out.csv = solution_csv(sol.u, w);
}

void run_sublinear(const RunConfig& c, RunResult& out) {
    const Grid grid(c.n);
    const ProblemParams params = params_of(c);
    const NonlinearitySpec spec = spec_of(c);
    SublinearOptions opts;
    if (c.tol_R > 0.0) opts.tol_R = c.tol_R;
    opts.inner_tol = c.inner_tol;
    opts.inner_max_iter = c.max_iter;
    const SublinearReport rep = solve_sublinear(params, spec, grid, opts);
    out.report["result"] = {
        {"status", "converged"},
        {"R", rep.R},
        {"energy", rep.energy},
        {"sup_norm", sup_norm(rep.u)},
        {"iterations", rep.outer_iterations},
        {"inner_iterations", rep.inner_iterations},
        {"bracket", {rep.bracket.first, rep.bracket.second}},
        {"residual", rep.residual},
        {"trivial", rep.trivial},
        {"alpha", spec.alpha()},
        {"tol_R", opts.tol_R},
    };
    out.csv = solution_csv(rep.u, rep.w);
}

void run_sweep(const RunConfig& c, RunResult& out) {
    SweepOptions opts;
    opts.grid = Grid(c.n);
    opts.threads = c.threads;
    if (c.tol_R > 0.0) opts.sublinear.tol_R = c.tol_R;
    opts.sublinear.inner_tol = c.inner_tol;
    opts.sublinear.inner_max_iter = c.max_iter;
    const std::vector<double> lambdas =
        c.lambdas.empty() ? lambda_grid(c.lambda_min, c.lambda_max, c.lambda_count, c.log_spaced) : c.lambdas;

    std::vector<BranchSample> samples;
    if (c.branch == "eigen") {
        ProblemParams{c.a, c.b, 0.0}.validate();
        samples = sweep_eigen(c.a, c.b, lambdas, opts);
    } else if (c.branch == "sublinear") {
        ProblemParams{c.a, c.b, 0.0}.validate();
        samples = sweep_sublinear(c.a, c.b, spec_of(c), lambdas, opts);
    } else {
        throw ConfigError("unknown sweep branch '" + c.branch + "' (expected eigen or sublinear)");
    }

    json rows = json::array();
    std::size_t converged = 0, no_solution = 0, failed = 0;
    for (const BranchSample& s : samples) {
        rows.push_back({{"lambda", s.lambda},
                        {"sup_norm", s.sup_norm},
                        {"R", s.R},
                        {"iterations", s.iterations},
                        {"status", std::string(to_string(s.status))},
                        {"message", s.message}});
        converged += s.status == SampleStatus::kConverged;
        no_solution += s.status == SampleStatus::kNoSolution;
        failed += s.status == SampleStatus::kFailed;
    }
    out.report["result"] = {
        {"status", failed == 0 ? "converged" : "convergence_failure"},
        {"samples", rows},
        {"converged", converged},
        {"no_solution", no_solution},
        {"failed", failed},
    };
    out.csv = sweep_csv(samples);
    if (failed != 0) out.exit_code = kExitConvergence;
}

void fail(RunResult& out, int code, const char* status, const char* reason, const std::exception& e) {
    out.exit_code = code;
    out.report["result"] = {{"status", status}, {"reason", reason}, {"message", e.what()}};
    out.csv.clear();
}

// ---- verify helpers ------------------------------------------------------

struct Solution {
    std::vector<double> x, u, w;
};

Solution read_solution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open solution file " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x,u,w") throw InputError("solution file lacks the x,u,w header");
    Solution s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[3];
        for (auto& c : cell) {
            if (!std::getline(ss, c, ',')) throw InputError("malformed solution row: " + line);
        }
        try {
            s.x.push_back(std::stod(cell[0]));
            s.u.push_back(std::stod(cell[1]));
            s.w.push_back(std::stod(cell[2]));
        } catch (const std::exception&) {
            throw InputError("malformed number in solution row: " + line);
        }
    }
    return s;
}

std::filesystem::path resolve(const std::string& csv, const std::filesystem::path& report) {
    std::filesystem::path p(csv);
    if (p.is_absolute() || std::filesystem::exists(p)) return p;
    return report.parent_path() / p;
}

Check make_check(std::string name, double measured, double limit) {
    return {std::move(name), measured <= limit, measured, limit};
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const RunConfig& c) {
    return {{"command", c.command},
            {"a", c.a},
            {"b", c.b},
            {"lambda", c.lambda},
            {"c1", c.c1},
            {"p", c.p},
            {"c2", c.c2},
            {"q", c.q},
            {"g", c.g},
            {"n", c.n},
            {"R", c.R},
            {"tol_R", c.tol_R},
            {"inner_tol", c.inner_tol},
            {"max_iter", c.max_iter},
            {"branch", c.branch},
            {"lambdas", c.lambdas},
            {"lambda_min", c.lambda_min},
            {"lambda_max", c.lambda_max},
            {"lambda_count", c.lambda_count},
            {"log_spaced", c.log_spaced},
            {"threads", c.threads},
            {"output", c.output},
            {"solution_csv", c.solution_csv}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.a = j.at("a").get<double>();
    c.b = j.at("b").get<double>();
    c.lambda = j.at("lambda").get<double>();
    c.c1 = j.at("c1").get<double>();
    c.p = j.at("p").get<double>();
    c.c2 = j.at("c2").get<double>();
    c.q = j.at("q").get<double>();
    c.g = j.at("g").get<std::string>();
    c.n = j.at("n").get<std::size_t>();
    c.R = j.at("R").get<double>();
    c.tol_R = j.at("tol_R").get<double>();
    c.inner_tol = j.at("inner_tol").get<double>();
    c.max_iter = j.value("max_iter", c.max_iter);
    c.branch = j.value("branch", c.branch);
    c.lambdas = j.value("lambdas", c.lambdas);
    c.lambda_min = j.value("lambda_min", c.lambda_min);
    c.lambda_max = j.value("lambda_max", c.lambda_max);
    c.lambda_count = j.value("lambda_count", c.lambda_count);
    c.log_spaced = j.value("log_spaced", c.log_spaced);
    c.threads = j.value("threads", c.threads);
    c.output = j.value("output", c.output);
    c.solution_csv = j.value("solution_csv", c.solution_csv);
    return c;
}

RunResult run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunResult out;
    out.report["config"] = to_json(config);
    try {
        if (config.command == "solve-linear") {
            run_linear(config, out);
        } else if (config.command == "solve-nonlocal") {
            run_nonlocal(config, out);
        } else if (config.command == "solve-eigen") {
            run_eigen(config, out);
        } else if (config.command == "solve-sublinear") {
            run_sublinear(config, out);
        } else if (config.command == "sweep") {
            run_sweep(config, out);
        } else {
            throw ConfigError("unknown command '" + config.command + "'");
        }
    } catch (const NoPositiveSolution& e) {
        fail(out, kExitTheoryForbidden, "no_positive_solution", "NoPositiveSolution", e);
    } catch (const ParameterDegenerate& e) {
        fail(out, kExitTheoryForbidden, "parameter_degenerate", "ParameterDegenerate", e);
    } catch (const ConvergenceFailure& e) {
        fail(out, kExitConvergence, "convergence_failure", "ConvergenceFailure", e);
    } catch (const Error& e) {
        fail(out, kExitInvalidConfig, "invalid_config", "InvalidConfig", e);
    }
    out.report["solution_csv_path"] =
        config.solution_csv.empty() || out.csv.empty() ? json(nullptr) : json(config.solution_csv);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    out.report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    return out;
}

bool write_outputs(const RunConfig& config, const RunResult& result) {
    bool ok = true;
    if (!config.output.empty()) {
        std::ofstream f(config.output);
        f << result.report.dump(2) << '\n';
        ok = ok && static_cast<bool>(f);
    }
    if (!config.solution_csv.empty() && !result.csv.empty()) {
        std::ofstream f(config.solution_csv);
        f << result.csv;
        ok = ok && static_cast<bool>(f);
    }
    return ok;
}

json VerifyResult::to_json() const {
    json checks_json = json::array();
    for (const Check& c : checks) {
        checks_json.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"limit", c.limit}});
    }
    json j = {{"passed", exit_code == kExitOk}, {"checks", checks_json}};
    if (!error.empty()) j["error"] = error;
    return j;
}

VerifyResult verify(const std::string& report_path) {
    VerifyResult out;
    try {
        std::ifstream in(report_path);
        if (!in) throw InputError("cannot open report " + report_path);
        json report;
        try {
            report = json::parse(in);
        } catch (const json::exception& e) {
            throw InputError(std::string("report is not valid JSON: ") + e.what());
        }
        RunConfig c;
        json result;
        try {
            c = config_from_json(report.at("config"));
            result = report.at("result");
        } catch (const json::exception& e) {
            throw InputError(std::string("report lacks required fields: ") + e.what());
        }
        if (result.value("status", "") != "converged") {
            throw InputError("report does not hold a converged solution");
        }
        if (c.command == "sweep") throw InputError("verify checks single solutions, not sweeps");
        if (!report.contains("solution_csv_path") || !report["solution_csv_path"].is_string()) {
            throw InputError("report has no solution CSV");
        }
        const Solution s =
            read_solution_csv(resolve(report["solution_csv_path"].get<std::string>(), report_path));

        const Grid grid(c.n);
        if (s.u.size() != grid.size()) throw InputError("solution size does not match the configured grid");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(s.x[i] - grid.node(i)) > 1e-12) throw InputError("solution nodes do not match the grid");
        }
        const GridFunction u(grid, s.u);
        const GridFunction w(grid, s.w);
        if (!u.all_finite() || !w.all_finite()) throw InputError("solution has non-finite values");
        const ProblemParams params = params_of(c);
        params.validate();

        double R = 0.0;
        GridFunction g(grid);
        if (c.command == "solve-linear") {
            R = c.R;
            g = builtin_rhs(c.g, grid);
        } else if (c.command == "solve-nonlocal") {
            R = result.at("R").get<double>();
            g = builtin_rhs(c.g, grid);
        } else if (c.command == "solve-eigen") {
            R = result.at("t0").get<double>();
            g = c.lambda * u;
        } else if (c.command == "solve-sublinear") {
            R = result.at("R").get<double>();
            g = c.lambda * f_eval(spec_of(c), u);
        } else {
            throw InputError("unknown command in report: " + c.command);
        }
        const double gnorm = sup_norm(g);
        const double unorm = sup_norm(u);
        const double wnorm = sup_norm(w);

        const double boundary = std::max({std::abs(u[0]), std::abs(u[grid.size() - 1]), std::abs(w[0]),
                                          std::abs(w[grid.size() - 1])});
        out.checks.push_back(make_check("boundary_values", boundary, 1e-14 * (1.0 + unorm + wnorm)));

        const GridFunction d2u = second_difference(u);
        double w_gap = 0.0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) w_gap = std::max(w_gap, std::abs(w[i] + d2u[i]));
        out.checks.push_back(make_check("w_equals_minus_second_difference", w_gap, 1e-2 * (1.0 + wnorm)));

        out.checks.push_back(make_check("residual", residual(u, g, params, R), 5e-2 * (1.0 + gnorm)));

        const double e = energy(u, w);
        const double y = (integrate(g * u) - integrate(w * w)) / params.stiffness(R).value();
        out.checks.push_back(make_check("energy_identity", std::abs(e - y), 1e-8 * (1.0 + gnorm * gnorm)));

        const ConeFlag cone = classify(g);
        if (cone != ConeFlag::kMixed) {
            const double sign = cone == ConeFlag::kNonneg ? 1.0 : -1.0;
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                worst = std::max({worst, -sign * u[i], -sign * w[i]});
            }
            out.checks.push_back(make_check("sign_structure", worst, 1e-14 * (1.0 + unorm + wnorm)));
        }

        if (c.command == "solve-nonlocal" || c.command == "solve-sublinear") {
            const double tol = result.value("tol_R", 1e-10);
            out.checks.push_back(make_check("fixed_point_consistency", std::abs(R - e), 10.0 * tol));
        }
        if (c.command == "solve-eigen") {
            out.checks.push_back(make_check("energy_equals_t0", std::abs(e - R), 1e-8));
        }

        bool all = true;
        for (const Check& ch : out.checks) all = all && ch.passed;
        out.exit_code = all ? kExitOk : kExitVerifyFailed;
    } catch (const Error& e) {
        out.exit_code = kExitInvalidConfig;
        out.error = e.what();
        out.checks.clear();
    }
    return out;
}

}  // namespace kbeam::cli
