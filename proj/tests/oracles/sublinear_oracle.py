"""Fine-grid reference values for the sublinear solver tests.

Independent of the C++ discretization: trapezoid Nystrom on much finer
grids, outer fixed point by brentq, Richardson extrapolation over three
grids. Run once and paste the printed JSON into tests/golden/sublinear.json.

    python3 tests/oracles/sublinear_oracle.py > tests/golden/sublinear.json
"""

import json

import numpy as np
from scipy.optimize import brentq

GRIDS = (1025, 2049, 4097)


def kernels(n, m):
    x = np.linspace(0.0, 1.0, n)
    h = x[1] - x[0]
    w = np.full(n, h)
    w[0] = w[-1] = h / 2
    X, T = x[:, None], x[None, :]
    lo, hi = np.minimum(X, T), np.maximum(X, T)
    G1 = lo * (1 - hi)
    r = np.sqrt(m)
    G2 = np.sinh(r * lo) * np.sinh(r * (1 - hi)) / (r * np.sinh(r))
    return x, G1 * w, G2 * w, w


def f(u, c1, p, c2, q):
    up = np.maximum(u, 0.0)
    return c1 * up**p + c2 * up**q


def inner(n, a, b, lam, R, spec, tol=1e-14):
    x, G1w, G2w, w = kernels(n, a + b * R)
    v = G1w @ (G2w @ (lam * f(np.ones(n), *spec)))
    for _ in range(10000):
        nv = G1w @ (G2w @ (lam * f(v, *spec)))
        if np.abs(nv - v).max() <= tol:
            v = nv
            break
        v = nv
    wv = G2w @ (lam * f(v, *spec))
    return v, wv, w


def outer(n, a, b, lam, spec):
    def gap(R):
        u, wv, w = inner(n, a, b, lam, R, spec)
        return R - np.sum(w * u * wv)

    hi = 1.0
    while gap(hi) <= 0:
        hi *= 2
    R = brentq(gap, 0.0, hi, xtol=1e-15, rtol=1e-14)
    u, _, _ = inner(n, a, b, lam, R, spec)
    return R, u.max()


def richardson(values):
    # Error model c2 h^2 + c25 h^2.5 on grids halving h.
    hs = np.array([1.0 / (n - 1) for n in GRIDS])
    A = np.column_stack([np.ones(3), hs**2, hs**2.5])
    return float(np.linalg.solve(A, np.array(values))[0])


def case_inner(a, b, lam, R, spec):
    sups = [inner(n, a, b, lam, R, spec)[0].max() for n in GRIDS]
    return {"sup_norm": richardson(sups), "raw": sups}


def case_outer(a, b, lam, spec):
    pairs = [outer(n, a, b, lam, spec) for n in GRIDS]
    return {
        "R": richardson([p[0] for p in pairs]),
        "sup_norm": richardson([p[1] for p in pairs]),
        "raw_R": [p[0] for p in pairs],
        "raw_sup_norm": [p[1] for p in pairs],
    }


def main():
    sqrt_only = (1.0, 0.5, 0.0, 0.5)
    two_term = (1.0, 0.5, 1.0, 1.0 / 3.0)
    out = {
        "inner_a1_b0_lambda1_sqrt": case_inner(1.0, 0.0, 1.0, 0.0, sqrt_only),
        "solve_a1_b1_lambda1_sqrt": case_outer(1.0, 1.0, 1.0, sqrt_only),
        "solve_a1_b1_lambda10_two_term": case_outer(1.0, 1.0, 10.0, two_term),
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
