"""The two-parameter family of extremal biquadratics defined by nine zeros.

For rational (p, q) the form is recovered as the (unique up to scale)
biquadratic vanishing to second order at the nine prescribed zero pairs.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .forms import Biquadratic, QuadraticMatrixPencil, biquadratic_monomials
from .linalg import DEFAULT_TOL, Tolerances, exact_nullspace, primitive_integer_vector
from .poly import Poly


class DegenerateFamilyError(ValueError):
    pass


def bs_zero_set(p, q) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    p, q = Fraction(p), Fraction(q)
    one, zero = Fraction(1), Fraction(0)
    S = [
        ((one, one, one), (one, one, one)),
        ((one, one, -one), (one, one, -one)),
        ((one, -one, one), (one, -one, one)),
        ((-one, one, one), (-one, one, one)),
        ((one, p, zero), (q, one, zero)),
        ((one, -p, zero), (-q, one, zero)),
        ((zero, one, q), (zero, p, one)),
        ((zero, one, -q), (zero, -p, one)),
        ((zero, zero, one), (one, zero, zero)),
    ]
    dups = projective_duplicates(S)
    if dups:
        warnings.warn(f"zero set at (p, q) = ({p}, {q}) has projective repeats {dups}", stacklevel=2)
    return S


def _proj_equal(a, b) -> bool:
    # a and b proportional, including sign: all 2x2 minors vanish
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def projective_duplicates(zeros) -> list[tuple[int, int]]:
    out = []
    for i in range(len(zeros)):
        for j in range(i + 1, len(zeros)):
            if _proj_equal(zeros[i][0], zeros[j][0]) and _proj_equal(zeros[i][1], zeros[j][1]):
                out.append((i, j))
    return out


def bs_validity(p, q) -> bool:
    """(p, q) in [0, 1/sqrt 2] x [0, sqrt 2], 2p > q and (p^2 - 1)^2 q^2 >= p^2."""
    p, q = Fraction(p), Fraction(q)
    in_box = 0 <= p and p * p <= Fraction(1, 2) and 0 <= q and q * q <= 2
    return bool(in_box and 2 * p > q and (p * p - 1) ** 2 * q * q >= p * p)


def _condition_rows(x, y, n: int, m: int) -> list[list[Fraction]]:
    mons = biquadratic_monomials(n, m)
    value = []
    dx = [[] for _ in range(n)]
    dy = [[] for _ in range(m)]
    for (i, k), (j, l) in mons:
        xx, yy = x[i] * x[k], y[j] * y[l]
        value.append(xx * yy)
        for t in range(n):
            dx[t].append(((x[k] if i == t else 0) + (x[i] if k == t else 0)) * yy)
        for t in range(m):
            dy[t].append(((y[l] if j == t else 0) + (y[j] if l == t else 0)) * xx)
    return [value] + dx + dy


@dataclass(frozen=True)
class InterpolationProblem:
    zeros: tuple
    matrix: tuple  # rows over the biquadratic coefficient space
    nullspace: tuple  # Biquadratic basis


def interpolation_problem(zeros, n: int = 3, m: int = 3) -> InterpolationProblem:
    zeros = tuple((tuple(Fraction(c) for c in x), tuple(Fraction(c) for c in y)) for x, y in zeros)
    rows = []
    for x, y in zeros:
        rows.extend(_condition_rows(x, y, n, m))
    ncols = len(biquadratic_monomials(n, m))
    basis = exact_nullspace(rows, ncols) if rows else exact_nullspace([], ncols)
    forms = tuple(Biquadratic(n, m, tuple(primitive_integer_vector(v))) for v in basis)
    return InterpolationProblem(zeros, tuple(tuple(r) for r in rows), forms)


def interpolate_biquadratic(zeros, n: int = 3, m: int = 3) -> list[Biquadratic]:
    """Basis of biquadratics with F = 0 and grad F = 0 at every given zero pair."""
    return list(interpolation_problem(zeros, n, m).nullspace)


def normalize_integral(F: Biquadratic) -> Biquadratic:
    """Coprime integer coefficients, first nonzero coefficient positive."""
    v = primitive_integer_vector(F.coeffs)
    first = next((c for c in v if c != 0), 0)
    if first < 0:
        v = [-c for c in v]
    return Biquadratic(F.n, F.m, tuple(v))


def bs_form(p, q, tol: Tolerances = DEFAULT_TOL, check_nonnegative: bool = True) -> Biquadratic:
    if not bs_validity(p, q):
        raise DegenerateFamilyError(f"(p, q) = ({p}, {q}) is outside the validity region")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        basis = interpolate_biquadratic(bs_zero_set(p, q))
    if len(basis) != 1:
        raise DegenerateFamilyError(
            f"family degenerate at (p, q) = ({p}, {q}): nullspace dimension {len(basis)}")
    F = normalize_integral(basis[0])
    if check_nonnegative:
        from .numerics import min_on_spheres

        res = min_on_spheres(F, tol)
        if res.value < -tol.zero_tol * res.scale:
            raise DegenerateFamilyError(
                f"interpolant at (p, q) = ({p}, {q}) is not nonnegative (min {res.value:.3e})")
    return F


def _q(coeffs: dict) -> Poly:
    return Poly(3, {e: Fraction(c) for e, c in coeffs.items()})


# acoustic x-matrix of the family member at (p, q) = (1/2, 3/4), up to positive scale
REFERENCE_X_MATRIX = (
    ({(2, 0, 0): 100, (0, 2, 0): 192}, {(1, 1, 0): -222}, {(1, 0, 1): -70}),
    ({(1, 1, 0): -222}, {(2, 0, 0): 27, (0, 2, 0): 225, (0, 0, 2): 192}, {(0, 1, 1): -222}),
    ({(1, 0, 1): -70}, {(0, 1, 1): -222}, {(2, 0, 0): 165, (0, 2, 0): 27, (0, 0, 2): 100}),
)


def reference_x_matrix() -> QuadraticMatrixPencil:
    return QuadraticMatrixPencil(tuple(tuple(_q(c) for c in row) for row in REFERENCE_X_MATRIX), 3)
