#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kbeam/cli.hpp"

using namespace kbeam::cli;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "kbeam_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

RunConfig config(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

RunResult run_to_disk(RunConfig c, const std::string& stem) {
    c.output = scratch(stem + ".json").string();
    c.solution_csv = scratch(stem + ".csv").string();
    const RunResult r = run(c);
    REQUIRE(write_outputs(c, r));
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Check* find(const VerifyResult& v, const std::string& name) {
    for (const Check& c : v.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("eigen command examples") {
    RunConfig c = config("solve-eigen");
    c.lambda = 117.1483;
    const RunResult ok = run(c);
    CHECK(ok.exit_code == kExitOk);
    CHECK(ok.report["result"]["c"].get<double>() == doctest::Approx(0.4501582).epsilon(1e-6));

    c.lambda = 100.0;
    const RunResult no = run(c);
    CHECK(no.exit_code == kExitTheoryForbidden);
    CHECK(no.report["result"]["reason"] == "NoPositiveSolution");
    CHECK(no.csv.empty());

    c.lambda = 300.0;
    c.b = 0.0;
    const RunResult degenerate = run(c);
    CHECK(degenerate.exit_code == kExitTheoryForbidden);
    CHECK(degenerate.report["result"]["reason"] == "ParameterDegenerate");
}

TEST_CASE("sublinear command with negative lambda") {
    RunConfig c = config("solve-sublinear");
    c.lambda = -1.0;
    const RunResult r = run(c);
    CHECK(r.exit_code == kExitTheoryForbidden);
    CHECK(r.report["result"]["reason"] == "NoPositiveSolution");
}

TEST_CASE("invalid configurations exit with code 4") {
    RunConfig even = config("solve-nonlocal");
    even.n = 100;
    CHECK(run(even).exit_code == kExitInvalidConfig);
    RunConfig bad_g = config("solve-linear");
    bad_g.g = "cos";
    CHECK(run(bad_g).exit_code == kExitInvalidConfig);
    RunConfig bad_a = config("solve-nonlocal");
    bad_a.a = -1.0;
    CHECK(run(bad_a).exit_code == kExitInvalidConfig);
    RunConfig bad_spec = config("solve-sublinear");
    bad_spec.p = 1.5;
    CHECK(run(bad_spec).exit_code == kExitInvalidConfig);
    CHECK(run(config("frobnicate")).exit_code == kExitInvalidConfig);
    RunConfig bad_branch = config("sweep");
    bad_branch.branch = "cubic";
    CHECK(run(bad_branch).exit_code == kExitInvalidConfig);
}

TEST_CASE("convergence failures exit with code 3") {
    RunConfig c = config("solve-sublinear");
    c.lambda = 1.0;
    c.max_iter = 2;
    CHECK(run(c).exit_code == kExitConvergence);
}

TEST_CASE("report schema and config echo") {
    RunConfig c = config("solve-nonlocal");
    const RunResult r = run_to_disk(c, "schema");
    CHECK(r.exit_code == kExitOk);
    const auto report = nlohmann::json::parse(slurp(scratch("schema.json")));
    for (const char* key : {"config", "result", "solution_csv_path", "timing_ms"}) CHECK(report.contains(key));
    for (const char* key : {"R", "sup_norm", "iterations", "residual", "status"})
        CHECK(report["result"].contains(key));
    const RunConfig echoed = config_from_json(report["config"]);
    CHECK(to_json(echoed) == report["config"]);
    CHECK(echoed.command == "solve-nonlocal");
    CHECK(slurp(scratch("schema.csv")).rfind("x,u,w\n", 0) == 0);
}

TEST_CASE("csv numbers round-trip") {
    RunConfig c = config("solve-linear");
    c.n = 33;
    const RunResult r = run(c);
    std::istringstream in(r.csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    const double x1 = std::stod(line.substr(0, line.find(',')));
    CHECK(x1 == 1.0 / 32.0);
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(kPi)) == kPi);
}

TEST_CASE("identical configs give identical reports") {
    for (const char* cmd : {"solve-linear", "solve-nonlocal", "solve-eigen", "solve-sublinear", "sweep"}) {
        RunConfig c = config(cmd);
        c.lambda = 150.0;
        c.n = 65;
        c.lambda_count = 4;
        nlohmann::json a = run(c).report, b = run(c).report;
        a.erase("timing_ms");
        b.erase("timing_ms");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("sweep command") {
    RunConfig c = config("sweep");
    c.branch = "eigen";
    c.lambdas = {100.0, 117.1483, 150.0};
    const RunResult r = run(c);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.csv.rfind("lambda,sup_norm,R,iterations,status\n", 0) == 0);
    CHECK(r.csv.find("no_solution") != std::string::npos);
    CHECK(r.report["result"]["no_solution"] == 1);

    RunConfig s = config("sweep");
    s.branch = "sublinear";
    s.n = 65;
    s.lambda_min = 0.1;
    s.lambda_max = 10.0;
    s.lambda_count = 3;
    s.log_spaced = true;
    s.threads = 2;
    const RunResult rs = run(s);
    CHECK(rs.exit_code == kExitOk);
    CHECK(rs.report["result"]["converged"] == 3);
}

TEST_CASE("verify passes on fresh solutions") {
    for (const char* cmd : {"solve-linear", "solve-nonlocal", "solve-eigen", "solve-sublinear"}) {
        RunConfig c = config(cmd);
        c.lambda = 150.0;
        c.R = 0.5;
        run_to_disk(c, std::string("fresh_") + cmd);
        const VerifyResult v = verify(scratch(std::string("fresh_") + cmd + ".json").string());
        CHECK_MESSAGE(v.exit_code == kExitOk, cmd << ": " << v.to_json().dump());
        CHECK(find(v, "residual") != nullptr);
        CHECK(find(v, "energy_identity") != nullptr);
    }
}

TEST_CASE("verify on eigen output checks the energy level") {
    RunConfig c = config("solve-eigen");
    c.lambda = 117.1483;
    run_to_disk(c, "eigen_level");
    const VerifyResult v = verify(scratch("eigen_level.json").string());
    const Check* level = find(v, "energy_equals_t0");
    REQUIRE(level != nullptr);
    CHECK(level->passed);
    CHECK(level->measured <= 1e-8);
}

TEST_CASE("verify accepts the zero solution") {
    RunConfig c = config("solve-nonlocal");
    c.g = "zero";
    run_to_disk(c, "zero");
    const VerifyResult v = verify(scratch("zero.json").string());
    CHECK(v.exit_code == kExitOk);
}

TEST_CASE("verify catches a corrupted value") {
    run_to_disk(config("solve-nonlocal"), "corrupt");
    const fs::path csv = scratch("corrupt.csv");
    std::istringstream in(slurp(csv));
    std::ostringstream out;
    std::string line;
    for (int row = 0; std::getline(in, line); ++row) {
        if (row == 101) {
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const double u = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
            line = line.substr(0, c1 + 1) + format_number(u + 1e-3) + line.substr(c2);
        }
        out << line << '\n';
    }
    std::ofstream(csv) << out.str();
    const VerifyResult v = verify(scratch("corrupt.json").string());
    CHECK(v.exit_code == kExitVerifyFailed);
    const Check* r = find(v, "residual");
    REQUIRE(r != nullptr);
    CHECK_FALSE(r->passed);
}

TEST_CASE("verify rejects malformed input") {
    CHECK(verify(scratch("does_not_exist.json").string()).exit_code == kExitInvalidConfig);
    std::ofstream(scratch("garbage.json")) << "{ not json";
    CHECK(verify(scratch("garbage.json").string()).exit_code == kExitInvalidConfig);

    run_to_disk(config("solve-nonlocal"), "truncated");
    std::ofstream(scratch("truncated.csv")) << "x,u,w\n0,0,0\n";
    const VerifyResult v = verify(scratch("truncated.json").string());
    CHECK(v.exit_code == kExitInvalidConfig);
    CHECK_FALSE(v.error.empty());

    std::ofstream(scratch("badnum.csv")) << "x,u,w\n0,zero,0\n";
    auto report = nlohmann::json::parse(slurp(scratch("truncated.json")));
    report["solution_csv_path"] = "badnum.csv";
    std::ofstream(scratch("badnum.json")) << report.dump();
    CHECK(verify(scratch("badnum.json").string()).exit_code == kExitInvalidConfig);
}
