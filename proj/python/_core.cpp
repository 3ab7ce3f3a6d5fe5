#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kbeam/continuation.hpp"
#include "kbeam/eigen.hpp"
#include "kbeam/errors.hpp"
#include "kbeam/kernels.hpp"
#include "kbeam/nonlocal_solver.hpp"
#include "kbeam/sublinear_solver.hpp"

namespace py = pybind11;
using namespace kbeam;

namespace {

py::array_t<double> to_array(const GridFunction& f) {
    return py::array_t<double>(static_cast<py::ssize_t>(f.size()), f.data().data());
}

GridFunction from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& values) {
    if (values.ndim() != 1) throw InputError("expected a one-dimensional array");
    const Grid grid(static_cast<std::size_t>(values.shape(0)));
    return GridFunction(grid, std::vector<double>(values.data(), values.data() + values.shape(0)));
}

py::dict sample_dict(const BranchSample& s) {
    py::dict d;
    d["lambda"] = s.lambda;
    d["sup_norm"] = s.sup_norm;
    d["R"] = s.R;
    d["iterations"] = s.iterations;
    d["status"] = std::string(to_string(s.status));
    d["message"] = s.message;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hinged Kirchhoff beam solvers";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<NoPositiveSolution>(m, "NoPositiveSolution", base.ptr());
    py::register_exception<ParameterDegenerate>(m, "ParameterDegenerate", base.ptr());
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", base.ptr());

    m.def("nodes", [](std::size_t n) { return Grid(n).nodes(); }, py::arg("n") = Grid::kDefaultNodes,
          "Grid nodes on [0,1].");
    m.def("g1", &g1, py::arg("x"), py::arg("t"));
    m.def(
        "g2", [](double t, double s, double stiffness) { return g2(t, s, StiffnessParam(stiffness)); },
        py::arg("t"), py::arg("s"), py::arg("m"));
    m.def("principal_eigenvalue", &principal_eigenvalue, py::arg("A"));

    m.def(
        "solve_fixed_R",
        [](const py::array_t<double>& g, double a, double b, double R) {
            const ProblemParams params{a, b, 0.0};
            params.validate();
            const GridFunction gf = from_array(g);
            const FixedRSolution sol = solve_fixed_R(gf, params, R);
            py::dict d;
            d["u"] = to_array(sol.u);
            d["w"] = to_array(sol.w);
            d["energy"] = sol.energy;
            d["y_of_R"] = y_of_R(sol, gf, params);
            return d;
        },
        py::arg("g"), py::arg("a"), py::arg("b"), py::arg("R"),
        "Linear solve u'''' - (a + bR)u'' = g for g sampled on a uniform grid.");

    m.def(
        "solve_nonlocal",
        [](const py::array_t<double>& g, double a, double b, double tol_R) {
            NonlocalOptions opts;
            opts.tol_R = tol_R;
            const SolveReport rep = solve_nonlocal(from_array(g), ProblemParams{a, b, 0.0}, opts);
            py::dict d;
            d["u"] = to_array(rep.u);
            d["w"] = to_array(rep.w);
            d["R"] = rep.R;
            d["energy"] = rep.energy;
            d["fixed_point_gap"] = rep.fixed_point_gap;
            d["iterations"] = rep.iterations;
            d["residual"] = rep.residual;
            d["cone_flag"] = std::string(to_string(rep.cone_flag));
            d["non_uniqueness_warning"] = rep.non_uniqueness_warning;
            return d;
        },
        py::arg("g"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("tol_R") = 1e-10);

    m.def(
        "solve_eigen",
        [](double a, double b, double lambda, std::size_t n) {
            const EigenSolution sol = solve_nonlinear_eigen(ProblemParams{a, b, lambda}, Grid(n));
            py::dict d;
            d["u"] = to_array(sol.u);
            d["t0"] = sol.t0;
            d["c"] = sol.c;
            d["lambda"] = sol.lambda;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("lambda_"), py::arg("n") = Grid::kDefaultNodes);

    m.def(
        "solve_sublinear",
        [](double a, double b, double lambda, double c1, double p, double c2, double q, std::size_t n,
           double tol_R) {
            SublinearOptions opts;
            opts.tol_R = tol_R;
            const SublinearReport rep = solve_sublinear(ProblemParams{a, b, lambda},
                                                        NonlinearitySpec::power_sum(c1, p, c2, q), Grid(n), opts);
            py::dict d;
            d["u"] = to_array(rep.u);
            d["w"] = to_array(rep.w);
            d["R"] = rep.R;
            d["energy"] = rep.energy;
            d["iterations"] = rep.outer_iterations;
            d["residual"] = rep.residual;
            d["trivial"] = rep.trivial;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("lambda_"), py::arg("c1") = 1.0, py::arg("p") = 0.5,
        py::arg("c2") = 0.0, py::arg("q") = 0.5, py::arg("n") = Grid::kDefaultNodes, py::arg("tol_R") = 1e-8);

    m.def(
        "sweep_eigen",
        [](double a, double b, const std::vector<double>& lambdas, std::size_t threads) {
            SweepOptions opts;
            opts.threads = threads;
            py::list out;
            for (const BranchSample& s : sweep_eigen(a, b, lambdas, opts)) out.append(sample_dict(s));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("lambdas"), py::arg("threads") = 1);

    m.def(
        "sweep_sublinear",
        [](double a, double b, const std::vector<double>& lambdas, double c1, double p, double c2, double q,
           std::size_t threads) {
            SweepOptions opts;
            opts.threads = threads;
            std::vector<BranchSample> samples;
            {
                py::gil_scoped_release release;
                samples = sweep_sublinear(a, b, NonlinearitySpec::power_sum(c1, p, c2, q), lambdas, opts);
            }
            py::list out;
            for (const BranchSample& s : samples) out.append(sample_dict(s));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("lambdas"), py::arg("c1") = 1.0, py::arg("p") = 0.5,
        py::arg("c2") = 0.0, py::arg("q") = 0.5, py::arg("threads") = 1);
}
