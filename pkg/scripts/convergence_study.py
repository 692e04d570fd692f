#!/usr/bin/env python3
"""Numerical studies backing the closed-form solvers.

Prints three tables: RK4 error against the exact solution across step sizes
(with observed convergence order), fitted decay rates against the dominant
eigenvalues, and the order dependence of the approach to a difference-flow
target for small and large vertex counts.
"""
import math
import os

import numpy as np

from polyflow.circulant import flow_eigenvalue
from polyflow.integrate import IntegratorConfig, PolyharmonicKind, integrate
from polyflow.polygon import Polygon, centroid
from polyflow.spectral_flow import solve
from polyflow.yau_flow import YauProblem, yau_limit, yau_solve

SEED = int(os.environ.get("POLYFLOW_SEED", "20260810"))


def sup(a, b):
    return float(np.abs(a.vertices - b.vertices).max())


def rk4_order_table():
    print("== RK4 error vs exact solution (segment hexagon, order 1, T=1) ==")
    x0 = Polygon(np.array([[1.0, 0.0], [-1.0, 0.0]] * 3))
    exact = x0.scaled(math.exp(-4.0))
    previous = None
    for dt in (8e-3, 4e-3, 2e-3, 1e-3):
        traj = integrate(x0, IntegratorConfig(dt=dt, t_final=1.0, kind=PolyharmonicKind(1)))
        err = sup(traj.final(), exact)
        order = "" if previous is None else f"  order={math.log2(previous / err) / 1.0:.2f}"
        print(f"  dt={dt:<7g} err={err:.3e}{order}")
        previous = err
    print()


def decay_rate_table(rng):
    print("== fitted decay slopes vs dominant eigenvalues (pentagon) ==")
    pentagon = Polygon(rng.uniform(-1, 1, size=(5, 2)))
    c = centroid(pentagon)
    ts = np.linspace(5.0, 10.0, 11)
    for m in (1, 2, 3):
        logs = [math.log(np.abs(solve(pentagon, m, t).vertices - c).max()) for t in ts]
        slope = float(np.polyfit(ts, logs, 1)[0])
        lam = flow_eigenvalue(5, m, 1)
        print(f"  m={m}  slope={slope:+.6f}  eigenvalue={lam:+.6f}")
    print()


def order_dependence_table(rng):
    print("== distance to the difference-flow target at t=2 ==")
    for n in (5, 8):
        x = Polygon(rng.uniform(-1, 1, size=(n, 2)))
        y = Polygon(rng.uniform(-1, 1, size=(n, 2)))
        row = []
        for m in (1, 2, 3):
            problem = YauProblem(m=m, initial=x, target=y)
            row.append(sup(yau_solve(problem, 2.0), yau_limit(problem)))
        trend = "faster with m" if row[0] > row[2] else "slower with m"
        cells = "  ".join(f"m={m}: {d:.3e}" for m, d in zip((1, 2, 3), row))
        print(f"  n={n}: {cells}   ({trend})")
    print()


def main():
    rng = np.random.default_rng(SEED)
    rk4_order_table()
    decay_rate_table(rng)
    order_dependence_table(rng)


if __name__ == "__main__":
    main()
