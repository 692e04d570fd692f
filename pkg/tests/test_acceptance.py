"""Acceptance criteria, one test per criterion, tolerances pinned.

Each criterion gets a PASS/FAIL line in the terminal summary (see conftest).
Seeded fixtures derive from POLYFLOW_SEED.
"""
import math
import time

import numpy as np
import pytest

from polyflow import circulant
from polyflow.circulant import (
    circulant_multiply,
    flow_eigenvalue,
    fourier_matrix,
    matvec,
    power_of_m,
    second_difference,
)
from polyflow.integrate import IntegratorConfig, PolyharmonicKind, YauKind, integrate
from polyflow.polygon import Polygon, centroid, energy
from polyflow.spectral_flow import (
    affine_pushforward,
    classify_self_similar,
    decompose,
    flow_solution,
    mode_component,
    rescaled_limit,
    solve,
)
from polyflow.yau_flow import YauProblem, yau_limit, yau_solve

import helpers
from conftest import SEED


def seeded_rng(offset=0):
    return np.random.default_rng(SEED + offset)


def test_c01_hexagon_matrix_rows_exact():
    expected = {
        1: (-2, 1, 0, 0, 0, 1),
        2: (6, -4, 1, 0, 1, -4),
        3: (-20, 15, -6, 2, -6, 15),
    }
    power_of_m(6, 1)  # warm import-level caches before timing
    start = time.perf_counter()
    rows = {m: power_of_m(6, m).first_row for m in (1, 2, 3)}
    elapsed = time.perf_counter() - start
    assert rows == expected
    assert elapsed < 1e-3


def test_c02_power_equals_iterated_multiplication():
    start = time.perf_counter()
    for n in range(3, 11):
        base = second_difference(n)
        acc = base
        for m in range(1, 7):
            if m > 1:
                acc = circulant_multiply(acc, base)
            assert acc == power_of_m(n, m)
    assert time.perf_counter() - start < 1.0


def test_c03_eigenstructure():
    for n in range(3, 13):
        f = fourier_matrix(n)
        for m in range(1, 5):
            mat = power_of_m(n, m)
            sign = 1.0 if (m + 1) % 2 == 0 else -1.0
            for k in range(n):
                lam = flow_eigenvalue(n, m, k)
                residual = sign * matvec(mat, f[:, k]) - lam * f[:, k]
                assert np.abs(residual).max() < 1e-9
    for m in range(1, circulant.M_MAX + 1):
        assert abs(flow_eigenvalue(6, m, 1) - (-1.0)) < 1e-12


def test_c04_closed_form_matches_rk4():
    start = time.perf_counter()
    rng = seeded_rng(4)
    for case in range(20):
        p = 2 if case % 2 == 0 else 3
        m = case % 3 + 1
        n = 4 + case % 6
        x = helpers.random_polygon(rng, n, p=p)
        y = helpers.random_polygon(rng, n, p=p)

        traj = integrate(x, IntegratorConfig(dt=1e-3, t_final=1.0, kind=PolyharmonicKind(m)))
        assert helpers.sup_distance(traj.final(), solve(x, m, 1.0)) < 1e-6

        traj = integrate(x, IntegratorConfig(dt=1e-3, t_final=1.0, kind=YauKind(m, y)))
        exact = yau_solve(YauProblem(m=m, initial=x, target=y), 1.0)
        assert helpers.sup_distance(traj.final(), exact) < 1e-6
    assert time.perf_counter() - start < 10.0


def test_c05_exponential_convergence_to_point():
    rng = seeded_rng(5)
    pentagon = helpers.random_polygon(rng, 5)
    c = centroid(pentagon)
    for m in (1, 2, 3):
        lam = flow_eigenvalue(5, m, 1)
        ts = np.linspace(5.0, 10.0, 11)
        logs = [
            math.log(np.abs(solve(pentagon, m, t).vertices - c).max()) for t in ts
        ]
        slope = helpers.fit_slope(ts, logs)
        assert abs(slope - lam) < 0.01 * abs(lam)


def test_c06_rescaled_limit_reaches_dominant_mode_pair():
    rng = seeded_rng(6)
    f = fourier_matrix(5)
    for m in (1, 2, 3):
        for _ in range(3):
            pentagon = helpers.random_polygon(rng, 5)
            operator = flow_solution(pentagon, m)
            k_star, _ = rescaled_limit(pentagon, m, "forward")
            assert k_star == 1
            # limit from the independent complex-coefficient path
            a = operator.decomposition.planar_coeffs
            limit = Polygon.from_complex(a[1] * f[:, 1] + a[4] * f[:, 4])
            t = 40.0 / abs(flow_eigenvalue(5, m, 2) - flow_eigenvalue(5, m, 1))
            rescaled = operator.rescaled_deviation_at(t, 1)
            assert helpers.sup_distance(rescaled, limit) < 1e-8


def test_c07_codimension_four_limit_is_planar():
    rng = seeded_rng(7)
    for n in (5, 6, 7):
        x = helpers.random_polygon(rng, n, p=4)
        _, limit = rescaled_limit(x, 2, "forward")
        v = limit.vertices - limit.vertices.mean(axis=0)
        singular = np.linalg.svd(v, compute_uv=False)
        assert singular[2] < 1e-9 * singular[0]
        assert singular[3] < 1e-9 * singular[0]


def test_c08_pure_mode_pair_is_exactly_self_similar():
    for n in (5, 6):
        f = fourier_matrix(n)
        x0 = Polygon.from_complex(2.0 * f[:, 1] + 0.5 * f[:, n - 1])
        for m in (1, 2, 3):
            lam = flow_eigenvalue(n, m, 1)
            verdict = classify_self_similar(x0, m)
            assert verdict is not None and verdict.mode == 1
            for t in np.linspace(-2.0, 5.0, 15):
                expected = x0.scaled(math.exp(lam * t))
                assert helpers.sup_distance(solve(x0, m, t), expected) < 1e-9


def test_c09_no_nontrivial_rigid_motions():
    rng = seeded_rng(9)
    for case in range(20):
        m = case % 3 + 1
        n = 4 + case % 5
        x = helpers.random_polygon(rng, n)
        moved = solve(x, m, 0.5)
        assert helpers.rigid_fit_residual(x, moved) > 1e-6
    const = helpers.constant_polygon(rng.normal(size=3), 6)
    for m in (1, 2, 3):
        for t in (0.25, 4.0, 64.0):
            assert solve(const, m, t) == const


def test_c10_yau_limit_is_translated_target():
    rng = seeded_rng(10)
    for m in (1, 2, 3):
        x = helpers.random_polygon(rng, 5)
        y = helpers.random_polygon(rng, 5)
        problem = YauProblem(m=m, initial=x, target=y)
        limit = y.translated(centroid(x - y))
        t = 40.0 / abs(flow_eigenvalue(5, m, 1))
        assert helpers.sup_distance(yau_solve(problem, t), limit) < 1e-8
    # matching centroids (exact integer construction): the limit is Y itself
    y = Polygon(np.array([[0.0, 0.0], [3.0, 0.0], [3.0, 2.0], [0.0, 2.0], [1.0, 1.0]]))
    d = Polygon(np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [0.0, 0.0]]))
    assert yau_limit(YauProblem(m=2, initial=y + d, target=y)) == y


def test_c11_energy_strictly_decreases():
    rng = seeded_rng(11)
    for n, m in ((5, 1), (6, 2), (7, 3)):
        x = helpers.random_polygon(rng, n)
        values = [energy(solve(x, m, t), m) for t in np.linspace(0.0, 3.0, 100)]
        assert all(b < a for a, b in zip(values, values[1:]))


def test_c12_centroid_and_affine_equivariance():
    rng = seeded_rng(12)
    for p in (2, 3):
        x = helpers.random_polygon(rng, 6, p=p)
        c0 = centroid(x)
        e = rng.normal(size=(p, p))
        a = rng.normal(size=p)
        for m in (1, 2):
            for t in (0.1, 1.0, 7.5):
                assert np.abs(centroid(solve(x, m, t)) - c0).max() < 1e-10
                left = solve(affine_pushforward(x, e, a), m, t)
                right = affine_pushforward(solve(x, m, t), e, a)
                assert helpers.sup_distance(left, right) < 1e-9


def test_c13_rk4_error_ratios_are_fourth_order():
    x0 = Polygon(np.array([[1.0, 0.0], [-1.0, 0.0]] * 3))  # pure rate -4 mode
    errors = []
    for dt in (4e-3, 2e-3, 1e-3):
        traj = integrate(x0, IntegratorConfig(dt=dt, t_final=1.0, kind=PolyharmonicKind(1)))
        errors.append(helpers.sup_distance(traj.final(), x0.scaled(math.exp(-4.0))))
    assert 12.0 < errors[0] / errors[1] < 20.0
    assert 12.0 < errors[1] / errors[2] < 20.0
