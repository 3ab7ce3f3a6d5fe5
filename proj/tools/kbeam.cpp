#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kbeam/cli.hpp"

namespace {

using kbeam::cli::RunConfig;

void add_problem_options(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--a", c.a, "Base stiffness a > 0")->capture_default_str();
    cmd->add_option("--b", c.b, "Kirchhoff coefficient b >= 0")->capture_default_str();
    cmd->add_option("--n", c.n, "Grid nodes (odd, >= 33)")->capture_default_str();
    cmd->add_option("-o,--output", c.output, "JSON report path (default: stdout)");
    cmd->add_option("--csv", c.solution_csv, "CSV output path");
}

void add_nonlinearity_options(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--c1", c.c1, "Coefficient of s^p")->capture_default_str();
    cmd->add_option("--p", c.p, "First exponent in (0,1)")->capture_default_str();
    cmd->add_option("--c2", c.c2, "Coefficient of s^q")->capture_default_str();
    cmd->add_option("--q", c.q, "Second exponent in (0,1)")->capture_default_str();
    cmd->add_option("--inner-tol", c.inner_tol, "Inner iteration tolerance")->capture_default_str();
    cmd->add_option("--max-iter", c.max_iter, "Inner iteration cap")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hinged Kirchhoff beam solver"};
    app.require_subcommand(1);

    RunConfig c;
    std::string report_path;

    auto* linear = app.add_subcommand("solve-linear", "Solve the linear problem at a fixed R");
    add_problem_options(linear, c);
    linear->add_option("--g", c.g, "Right-hand side: sin-pi, const, neg-sin-pi, zero")->capture_default_str();
    linear->add_option("--R", c.R, "Frozen value of the integral of (u')^2")->capture_default_str();

    auto* nonlocal = app.add_subcommand("solve-nonlocal", "Solve the nonlocal problem for a built-in g");
    add_problem_options(nonlocal, c);
    nonlocal->add_option("--g", c.g, "Right-hand side: sin-pi, const, neg-sin-pi, zero")->capture_default_str();
    nonlocal->add_option("--tol-R", c.tol_R, "Bisection tolerance on R");

    auto* eigen = app.add_subcommand("solve-eigen", "Positive solution of u'''' - (a + bR)u'' = lambda u");
    add_problem_options(eigen, c);
    eigen->add_option("--lambda", c.lambda, "Eigenvalue parameter")->required();

    auto* sublinear = app.add_subcommand("solve-sublinear", "Positive solution for a power-sum nonlinearity");
    add_problem_options(sublinear, c);
    add_nonlinearity_options(sublinear, c);
    sublinear->add_option("--lambda", c.lambda, "Load parameter")->required();
    sublinear->add_option("--tol-R", c.tol_R, "Bisection tolerance on R");

    auto* sweep = app.add_subcommand("sweep", "Trace sup|u| along a lambda grid");
    add_problem_options(sweep, c);
    add_nonlinearity_options(sweep, c);
    sweep->add_option("--branch", c.branch, "eigen or sublinear")->capture_default_str();
    sweep->add_option("--lambdas", c.lambdas, "Explicit lambda values")->delimiter(',');
    sweep->add_option("--lambda-min", c.lambda_min)->capture_default_str();
    sweep->add_option("--lambda-max", c.lambda_max)->capture_default_str();
    sweep->add_option("--count", c.lambda_count, "Number of lambda values")->capture_default_str();
    sweep->add_flag("--log", c.log_spaced, "Log-spaced lambda grid");
    sweep->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
    sweep->add_option("--tol-R", c.tol_R, "Bisection tolerance on R");

    auto* verify = app.add_subcommand("verify", "Re-check the invariants of a saved solution");
    verify->add_option("report", report_path, "JSON report written by a solve command")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kbeam::cli::kExitInvalidConfig;
    }

    if (verify->parsed()) {
        const kbeam::cli::VerifyResult res = kbeam::cli::verify(report_path);
        std::cout << res.to_json().dump(2) << '\n';
        return res.exit_code;
    }

    c.command = app.get_subcommands().front()->get_name();
    const kbeam::cli::RunResult res = kbeam::cli::run(c);
    if (c.output.empty()) std::cout << res.report.dump(2) << '\n';
    if (!kbeam::cli::write_outputs(c, res)) {
        std::cerr << "kbeam: could not write output files\n";
        return kbeam::cli::kExitInvalidConfig;
    }
    if (res.exit_code != kbeam::cli::kExitOk && !c.output.empty()) {
        std::cerr << "kbeam: " << res.report["result"].value("message", std::string("failed")) << '\n';
    }
    return res.exit_code;
}
