"""Solvers for the hinged Kirchhoff beam u'''' - (a + b int (u')^2) u'' = lambda f(u)."""

from ._core import (
    ConfigError,
    ConvergenceFailure,
    DomainError,
    Error,
    InputError,
    NoPositiveSolution,
    ParameterDegenerate,
    g1,
    g2,
    nodes,
    principal_eigenvalue,
    solve_eigen,
    solve_fixed_R,
    solve_nonlocal,
    solve_sublinear,
    sweep_eigen,
    sweep_sublinear,
)

__all__ = [
    "ConfigError",
    "ConvergenceFailure",
    "DomainError",
    "Error",
    "InputError",
    "NoPositiveSolution",
    "ParameterDegenerate",
    "g1",
    "g2",
    "nodes",
    "principal_eigenvalue",
    "solve_eigen",
    "solve_fixed_R",
    "solve_nonlocal",
    "solve_sublinear",
    "sweep_eigen",
    "sweep_sublinear",
]
