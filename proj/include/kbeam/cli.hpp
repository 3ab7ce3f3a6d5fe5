#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace kbeam::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitTheoryForbidden = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitInvalidConfig = 4;

struct RunConfig {
    std::string command;  ///< solve-linear | solve-nonlocal | solve-eigen | solve-sublinear | sweep | verify
    double a = 1.0;
    double b = 1.0;
    double lambda = 1.0;
    double c1 = 1.0;
    double p = 0.5;
    double c2 = 0.0;
    double q = 0.5;
    std::string g = "sin-pi";   ///< sin-pi | const | neg-sin-pi | zero
    std::size_t n = 257;
    double R = 0.0;             ///< solve-linear only
    double tol_R = -1.0;        ///< negative: command default
    double inner_tol = 1e-12;
    std::size_t max_iter = 10000;  ///< inner iteration cap (sublinear)

    // sweep
    std::string branch = "eigen";  ///< eigen | sublinear
    std::vector<double> lambdas;   ///< explicit grid; overrides the range below
    double lambda_min = 1.0;
    double lambda_max = 100.0;
    std::size_t lambda_count = 10;
    bool log_spaced = false;
    std::size_t threads = 1;

    std::string output;        ///< JSON report path; empty: stdout
    std::string solution_csv;  ///< solution (x,u,w) or sweep CSV path; empty: none
    std::string report;        ///< verify: report to check
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

struct RunResult {
    int exit_code = kExitOk;
    nlohmann::json report;
    std::string csv;  ///< contents written to solution_csv (if any)
};

/// Runs one solve/sweep command. Never throws for solver or config errors;
/// those become exit codes with the reason recorded in the report.
RunResult run(const RunConfig& config);

struct Check {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double limit = 0.0;
};

struct VerifyResult {
    int exit_code = kExitOk;
    std::vector<Check> checks;
    std::string error;  ///< set when the report could not be loaded
    nlohmann::json to_json() const;
};

/// Re-loads a report and its solution CSV and recomputes the invariants
/// (boundary values, residual, energy identity, sign structure, fixed-point
/// consistency, eigen energy level) from the raw values.
VerifyResult verify(const std::string& report_path);

/// Writes the report (and CSV, when requested) to the configured paths.
/// Returns false when a file could not be written.
bool write_outputs(const RunConfig& config, const RunResult& result);

/// Formats a number with 17 significant digits.
std::string format_number(double v);

}  // namespace kbeam::cli
