"""Shared independent oracles and fixtures for the test suite.

Everything here deliberately avoids the library's production code paths
where it serves as an oracle: dense matrices, per-vertex stencils, Procrustes
fits, and the Fourier-sandwich solution are implemented from scratch.
"""
import math

import numpy as np

from polyflow import Polygon


def random_polygon(rng, n, p=2, scale=1.0):
    return Polygon(rng.uniform(-scale, scale, size=(n, p)))


def constant_polygon(point, n):
    point = np.asarray(point, dtype=float)
    return Polygon(np.tile(point, (n, 1)))


def dense_circulant(first_row):
    """Dense matrix from a first row, built independently of the library."""
    n = len(first_row)
    return np.array([[first_row[(j - i) % n] for j in range(n)] for i in range(n)], dtype=float)


def stencil_rhs(x, m):
    """Per-vertex flow velocity: (-1)^(m+1) sum_k (-1)^k C(2m,k) X_(j-m+k)."""
    n, p = x.n, x.p
    v = x.vertices
    sign = 1.0 if (m + 1) % 2 == 0 else -1.0
    out = np.zeros((n, p))
    for j in range(n):
        acc = np.zeros(p)
        for k in range(2 * m + 1):
            acc += ((-1) ** k * math.comb(2 * m, k)) * v[(j - m + k) % n]
        out[j] = sign * acc
    return out


def iterated_difference(x, m, j):
    """m-fold application of the order-1 difference at vertex j."""
    rows = x.vertices
    for _ in range(m):
        rows = np.roll(rows, -1, axis=0) - rows
    return rows[j % x.n]


def point_segment_distance(pt, a, b):
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(pt - a))
    t = float(np.clip((pt - a) @ ab / denom, 0.0, 1.0))
    return float(np.linalg.norm(pt - (a + t * ab)))

def distance_to_polygon_edges(pt, poly):
    v = poly.vertices
    return min(
        point_segment_distance(pt, v[i], v[(i + 1) % poly.n]) for i in range(poly.n)
    )


def sup_distance(a, b):
    return float(np.abs(a.vertices - b.vertices).max())


def fit_slope(ts, values):
    """Least-squares slope of values against ts."""
    return float(np.polyfit(np.asarray(ts), np.asarray(values), 1)[0])


def rigid_fit_residual(source, target):
    """Residual of the best-fit rigid motion (rotation + translation) taking
    source onto target; Kabsch via SVD with a proper-rotation determinant fix."""
    a = source.vertices - source.vertices.mean(axis=0)
    b = target.vertices - target.vertices.mean(axis=0)
    u, _, vt = np.linalg.svd(a.T @ b)
    d = np.sign(np.linalg.det(u @ vt))
    correction = np.ones(a.shape[1])
    correction[-1] = d
    rot = (u * correction) @ vt
    return float(np.linalg.norm(a @ rot - b))


def fourier_sandwich_yau(x0, y, m, t):
    """Direct evaluation of (1/n) F diag(exp(rate_k t)) conj(F) (X0 - Y) + Y,
    coordinate column by coordinate column."""
    from polyflow.circulant import flow_eigenvalue, fourier_matrix

    n = x0.n
    f = fourier_matrix(n)
    rates = np.array([flow_eigenvalue(n, m, k) for k in range(n)])
    propagator = (f * np.exp(rates * t)) @ f.conjugate() / n
    z = x0.vertices - y.vertices
    return Polygon((propagator @ z).real + y.vertices)
