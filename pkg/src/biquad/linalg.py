"""Exact rational and floating linear algebra used throughout the package."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    ``zero_tol`` is measured relative to the largest coefficient magnitude of
    the form under study, so that rescaling a form does not change verdicts.
    """

    eig_tol: float = 1e-10
    zero_tol: float = 1e-9
    dedupe_tol: float = 1e-6
    grid_density: int = 10_000
    exclusion_radius: float = 0.05
    max_seeds: int = 64
    seed: int = 0

    def __post_init__(self):
        for name in ("eig_tol", "zero_tol", "dedupe_tol", "grid_density", "exclusion_radius"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerances()


def is_exact(A) -> bool:
    """True when every entry is an int or a Fraction."""
    arr = np.asarray(A, dtype=object)
    return all(isinstance(v, (int, np.integer, Fraction)) and not isinstance(v, bool) for v in arr.flat)


def frac_matrix(A) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in np.asarray(A, dtype=object).tolist()]


def as_object_array(rows) -> np.ndarray:
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


def rref(A):
    """Reduced row echelon form over Q.  Returns (R, pivot_columns)."""
    R = frac_matrix(A)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def exact_rank(A) -> int:
    if len(A) == 0:
        return 0
    return len(rref(A)[1])


def exact_nullspace(A, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} over Q, one vector per free column."""
    if len(A) == 0:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(A)
    ncols = len(R[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def exact_inverse(A) -> np.ndarray:
    M = frac_matrix(A)
    n = len(M)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return as_object_array([row[n:] for row in R])


def exact_matmul(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    return A.dot(B)


def primitive_integer_vector(v) -> list[int]:
    """Scale a rational vector to coprime integers (sign preserved)."""
    from math import gcd, lcm

    v = [Fraction(c) for c in v]
    den = 1
    for c in v:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    grade: str


def spectral(M) -> SpectralResult:
    A = np.asarray(M, dtype=float)
    w, V = np.linalg.eigh((A + A.T) / 2)
    return SpectralResult(w, V, "numeric")


def kernel_basis(M, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Kernel of a symmetric matrix.

    Rational input gives an exact rational basis (tolerance ignored); float
    input gives an orthonormal basis of eigenvectors with
    ``|lambda| <= eig_tol * ||M||``.
    """
    arr = np.asarray(M, dtype=object)
    if arr.size and is_exact(arr):
        basis = exact_nullspace(arr.tolist())
        return [np.array(v, dtype=object) for v in basis]
    A = np.asarray(M, dtype=float)
    res = spectral(A)
    norm = np.max(np.abs(res.eigenvalues)) if A.size else 0.0
    if norm == 0.0:
        return [np.eye(A.shape[0])[:, i] for i in range(A.shape[0])]
    mask = np.abs(res.eigenvalues) <= tol.eig_tol * norm
    return [res.eigenvectors[:, i] for i in np.flatnonzero(mask)]


def numeric_rank(A, rtol: float) -> int:
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))
