"""Exact circulant difference matrices and their discrete Fourier spectral theory.

The second-difference matrix ``M = circ(-2, 1, 0, ..., 0, 1)`` acts on closed
n-gons; its powers ``M^m`` drive the higher-order flows.  Everything here is
built from the first row only: powers are assembled from signed binomial
coefficients in exact integer arithmetic, products are cyclic convolutions,
and the eigenstructure comes from the roots of unity.  Dense matrices are
never materialized outside of test oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Entries of M^m are sums of C(2m, .) terms; the default cap keeps the largest
# single term C(40, 20) ~ 1.4e11 well inside exact float64 conversion.
M_MAX = 20


@dataclass(frozen=True)
class CirculantMatrix:
    """An n x n circulant matrix stored as its first row of exact integers."""

    n: int
    first_row: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"circulant size must be >= 3, got {self.n}")
        if len(self.first_row) != self.n:
            raise ValueError(
                f"first row has {len(self.first_row)} entries, expected {self.n}"
            )
        object.__setattr__(self, "first_row", tuple(int(b) for b in self.first_row))

    def to_dense(self) -> np.ndarray:
        """Dense float64 form, intended for test oracles only."""
        idx = (np.arange(self.n)[None, :] - np.arange(self.n)[:, None]) % self.n
        return np.asarray(self.first_row, dtype=float)[idx]

    def row_sum(self) -> int:
        return sum(self.first_row)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues and eigenpolygons of the order-m flow matrix for size n.

    ``eigenvalues[k]`` is the eigenvalue of ``(-1)^(m+1) M^m`` on the k-th
    eigenpolygon; ``eigenpolygons[:, k]`` is the unit-modulus complex vector
    ``(1, w^k, ..., w^((n-1)k))`` with ``w = exp(2*pi*i/n)``.
    """

    n: int
    m: int
    eigenvalues: np.ndarray
    eigenpolygons: np.ndarray

    def base_eigenvalue(self, k: int) -> float:
        """Eigenvalue of M itself on mode k, i.e. -4 sin^2(pi k / n)."""
        return lambda_base(self.n, k)


def root_of_unity(exponent: int, n: int) -> complex:
    """``exp(2*pi*i*exponent/n)`` with exact values on the axes.

    Quarter-turn multiples return exact (+-1, +-i) and the lower half plane is
    the bitwise conjugate of the upper half, so real/imaginary-part bases keep
    their zero and symmetry identities exactly.
    """
    a = exponent % n
    if 4 * a % n == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * a // n]
    if 2 * a > n:
        w = root_of_unity(n - a, n)
        return w.conjugate()
    theta = 2.0 * math.pi * a / n
    return complex(math.cos(theta), math.sin(theta))


def lambda_base(n: int, k: int) -> float:
    """Eigenvalue ``-4 sin^2(pi k / n)`` of M on mode k, exact in the pairs.

    The index is folded to min(k, n-k) so paired modes share one float, and
    sin^2 is special-cased where it has an exact binary value (0, 1/4, 1/2,
    3/4, 1) so that e.g. the dominant eigenvalue for n = 6 is exactly -1.
    """
    kk = min(k % n, (n - k) % n)
    if kk == 0:
        s2 = 0.0
    elif 2 * kk == n:
        s2 = 1.0
    elif 3 * kk == n:
        s2 = 0.75
    elif 4 * kk == n:
        s2 = 0.5
    elif 6 * kk == n:
        s2 = 0.25
    else:
        s2 = math.sin(math.pi * kk / n) ** 2
    return -4.0 * s2


def flow_eigenvalue(n: int, m: int, k: int) -> float:
    """Eigenvalue of ``(-1)^(m+1) M^m`` on mode k: zero at k = 0, negative otherwise."""
    sign = 1.0 if (m + 1) % 2 == 0 else -1.0
    return sign * lambda_base(n, k) ** m + 0.0  # + 0.0 normalizes -0.0 at k = 0


def minimal_r(m: int, n: int) -> int:
    """Smallest repetition count r with r*n >= 2m + 3.

    That width fits every binomial entry of both the order-m and order-(m+1)
    coefficient functions on the same cyclic domain.
    """
    if m < 1 or n < 3:
        raise ValueError(f"need m >= 1 and n >= 3, got m={m}, n={n}")
    return -((2 * m + 3) // -n)


def um_value(m: int, n: int, r: int, k: int) -> int:
    """Signed binomial coefficient function generating the entries of M^m.

    Over the cyclic index domain Z/(r*n): ``(-1)^(m+k) C(2m, m+k)`` on the
    leading band ``k <= m``, zero on the middle band, and the mirrored tail
    ``(-1)^(m+k-rn) C(2m, m+k-rn)`` for ``k >= rn - m``.
    """
    if m < 1 or n < 3:
        raise ValueError(f"need m >= 1 and n >= 3, got m={m}, n={n}")
    rn = r * n
    if rn - (2 * m + 1) < 2:
        raise ValueError(f"r={r} too small: need r*n - (2m+1) >= 2 for m={m}, n={n}")
    if not 0 <= k < rn:
        raise ValueError(f"index k={k} outside [0, {rn})")
    if k <= m:
        return (-1) ** (m + k) * math.comb(2 * m, m + k)
    if k <= rn - m - 1:
        return 0
    return (-1) ** (m + k - rn) * math.comb(2 * m, m + k - rn)


def power_of_m(n: int, m: int, r: int | None = None) -> CirculantMatrix:
    """First row of ``M^m`` (the ``(-1)^(m+1)`` flow sign is NOT applied).

    Entry k is the sum of the signed binomial function over the r copies of
    the size-n window: ``b_k = sum_j u_m(j*n + k)``.  Exact integers; the
    result is symmetric with zero row sum.  Any admissible ``r`` gives the
    same matrix; ``None`` picks the smallest.
    """
    if m < 1 or n < 3:
        raise ValueError(f"need m >= 1 and n >= 3, got m={m}, n={n}")
    if m > M_MAX:
        raise OverflowError(
            f"m={m} exceeds the exact-entry budget (m <= {M_MAX}): "
            f"C({2 * m}, {m}) would leave the guaranteed-exact float range"
        )
    if r is None:
        r = minimal_r(m, n)
    row = tuple(
        sum(um_value(m, n, r, j * n + k) for j in range(r)) for k in range(n)
    )
    return CirculantMatrix(n, row)


def second_difference(n: int) -> CirculantMatrix:
    """The base matrix M = circ(-2, 1, 0, ..., 0, 1)."""
    return power_of_m(n, 1)


def circulant_multiply(a: CirculantMatrix, b: CirculantMatrix) -> CirculantMatrix:
    """Product of circulant matrices via cyclic convolution of first rows.

    Pure Python integers throughout: entries of high powers overflow int64
    during convolution.
    """
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    n = a.n
    row = [0] * n
    for i, ai in enumerate(a.first_row):
        if ai == 0:
            continue
        for j, bj in enumerate(b.first_row):
            row[(i + j) % n] += ai * bj
    return CirculantMatrix(n, tuple(row))


def signed_offsets(a: CirculantMatrix) -> list[tuple[int, int]]:
    """Nonzero (offset, coefficient) pairs, offsets folded to (-n/2, n/2], ascending.

    Ascending signed order makes the accumulated sum match a centered-stencil
    evaluation term for term whenever the stencil does not wrap.
    """
    n = a.n
    pairs = []
    for s, coeff in enumerate(a.first_row):
        if coeff != 0:
            s_signed = s if 2 * s <= n else s - n
            pairs.append((s_signed, coeff))
    pairs.sort()
    return pairs


def matvec(a: CirculantMatrix, values: np.ndarray) -> np.ndarray:
    """Apply the circulant matrix to a vector or to per-vertex rows.

    ``values`` has shape (n,) or (n, p); row j of the result is
    ``sum_s b_s * values[(j + s) mod n]``, accumulated over ascending signed
    offsets.  Works for real and complex data.
    """
    values = np.asarray(values)
    if values.shape[0] != a.n:
        raise ValueError(f"size mismatch: matrix is {a.n}, data has {values.shape[0]} rows")
    base = np.arange(a.n)
    out = np.zeros(values.shape, dtype=np.result_type(values.dtype, np.float64))
    for s_signed, coeff in signed_offsets(a):
        out += float(coeff) * values[(base + s_signed) % a.n]
    return out


def apply(a: CirculantMatrix, polygon) -> "Polygon":
    """Apply the circulant matrix to every coordinate column of a polygon."""
    from .polygon import Polygon

    if polygon.n != a.n:
        raise ValueError(f"size mismatch: matrix is {a.n}, polygon has {polygon.n} vertices")
    return Polygon(matvec(a, polygon.vertices))


def eigen_system(n: int, m: int) -> EigenSystem:
    """Spectral data of the order-m flow matrix of size n."""
    if m < 1 or n < 3:
        raise ValueError(f"need m >= 1 and n >= 3, got m={m}, n={n}")
    eigenvalues = np.array([flow_eigenvalue(n, m, k) for k in range(n)])
    return EigenSystem(n=n, m=m, eigenvalues=eigenvalues, eigenpolygons=fourier_matrix(n))


@lru_cache(maxsize=64)
def _fourier_matrix_cached(n: int) -> np.ndarray:
    f = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            f[j, k] = root_of_unity(j * k, n)
    f.flags.writeable = False
    return f


def fourier_matrix(n: int) -> np.ndarray:
    """The n x n matrix with columns the eigenpolygons ``(w^(jk))_j``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return _fourier_matrix_cached(n)


def dft(v: np.ndarray) -> np.ndarray:
    """Multiply by the Fourier matrix.  Direct O(n^2) summation, any length."""
    v = np.asarray(v, dtype=complex)
    return fourier_matrix(v.shape[0]) @ v


def idft(v: np.ndarray) -> np.ndarray:
    """Inverse transform: multiply by the conjugate Fourier matrix over n."""
    v = np.asarray(v, dtype=complex)
    n = v.shape[0]
    return (fourier_matrix(n).conjugate() @ v) / n
