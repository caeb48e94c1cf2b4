"""Weak extremality via the span of zero tangent data, and its 3x3 consequence.

For a nonnegative biquadratic F, collect at every zero (x, y) the matrices
``x w^T + v y^T`` for (v, w) in the kernel of the Hessian of F at (x, y).
F is weak extremal exactly when these matrices span all n x m matrices.
When they do not, any M orthogonal to the span gives a square
``<x, M y>^2`` that a small positive multiple of can be subtracted from F.

Verdict semantics: in the 3x3 case every weak extremal spans an extreme ray,
so ``weak_extremal`` upgrades to ``strong_extremal``.  Perfect squares are
extreme rays but not weak extremals, and are reported as undecided.  A weak
extremal that is not strong would sit in the relative interior of a face of
dimension >= 2 containing no squares; no face computation is attempted here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import Biquadratic, ZeroDatum, is_perfect_square_biquadratic
from .linalg import DEFAULT_TOL, Tolerances, exact_nullspace, exact_rank, numeric_rank
from .numerics import NotNonnegativeError, min_on_spheres, projective_distance, zero_search
from .poly import fraction_sqrt


@dataclass
class LFSpace:
    basis: list
    dim: int
    grade: str
    n: int
    m: int

    def contains(self, A) -> bool:
        """Whether A lies in the span (exact, or at numeric rank tolerance)."""
        if self.grade == "exact" and _is_exact_matrix(A):
            return exact_rank([_flat(B) for B in self.basis] + [_flat(A)]) == self.dim
        rows = np.array([_flat(B, float) for B in self.basis] + [_flat(A, float)])
        return numeric_rank(rows, 1e-8) == self.dim


def _is_exact_matrix(A) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in np.asarray(A, dtype=object).flat)


def _is_zero(A) -> bool:
    return all(v == 0 for v in np.asarray(A, dtype=object).flat)


def _flat(A, kind=None):
    vals = list(np.asarray(A, dtype=object).flat)
    return [float(v) for v in vals] if kind is float else [Fraction(v) for v in vals]


def _tangent_matrices(z: ZeroDatum, exact: bool):
    x = np.array(z.x, dtype=object if exact else float)
    y = np.array(z.y, dtype=object if exact else float)
    for v, w in z.kernel:
        v = np.asarray(v, dtype=object if exact else float)
        w = np.asarray(w, dtype=object if exact else float)
        yield np.outer(x, w) + np.outer(v, y)


def lf_space(F: Biquadratic, zeros, tol: Tolerances = DEFAULT_TOL) -> LFSpace:
    """Span of x w^T + v y^T over zeros and Hessian-kernel pairs."""
    n, m = F.n, F.m
    exact = all(z.grade == "exact" for z in zeros)
    basis: list = []
    if exact:
        rows: list = []
        for z in zeros:
            for A in _tangent_matrices(z, True):
                cand = rows + [_flat(A)]
                if exact_rank(cand) > len(rows):
                    rows = cand
                    basis.append(A)
                if len(rows) == n * m:
                    break
        return LFSpace(basis, len(basis), "exact", n, m)
    ortho: list = []
    for z in zeros:
        for A in _tangent_matrices(z, False):
            a = np.asarray(A, dtype=float).ravel()
            norm = np.linalg.norm(a)
            if norm == 0:
                continue
            r = a / norm
            for _ in range(2):
                for q in ortho:
                    r = r - (q @ r) * q
            if np.linalg.norm(r) > max(tol.eig_tol, 1e-9):
                ortho.append(r / np.linalg.norm(r))
                basis.append(np.asarray(A, dtype=float))
    return LFSpace(basis, len(basis), "numeric", n, m)


def orthogonal_complement(lf: LFSpace) -> list[np.ndarray]:
    """Basis of matrices M with trace(M L^T) = 0 for L in the span."""
    n, m = lf.n, lf.m
    if lf.grade == "exact":
        vecs = exact_nullspace([_flat(B) for B in lf.basis], n * m)
        return [np.array(v, dtype=object).reshape(n, m) for v in vecs]
    if lf.dim == 0:
        return [np.eye(n * m)[i].reshape(n, m) for i in range(n * m)]
    rows = np.array([np.asarray(B, dtype=float).ravel() for B in lf.basis])
    _, s, Vt = np.linalg.svd(rows)
    return [Vt[i].reshape(n, m) for i in range(lf.dim, n * m)]


@dataclass
class WeakExtremalityVerdict:
    status: str  # weak_extremal | not_weak_extremal | inconclusive
    dim: int
    lf: LFSpace
    witness_M: np.ndarray | None = None
    witness_alpha: Fraction | None = None
    witness_min: float | None = None
    grade: str = "numeric"
    evidence: object = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "dim_LF": self.dim,
            "target_dim": self.lf.n * self.lf.m,
            "grade": self.grade,
            "witness_M": None if self.witness_M is None else [[str(v) for v in row] for row in self.witness_M.tolist()],
            "witness_alpha": None if self.witness_alpha is None else str(self.witness_alpha),
            "witness_min": self.witness_min,
            "zero_search": None if self.evidence is None else self.evidence.as_dict(),
            "notes": list(self.notes),
        }


def _unit(M: np.ndarray) -> np.ndarray:
    if _is_exact_matrix(M):
        norm2 = sum(Fraction(v) ** 2 for v in M.flat)
        r = fraction_sqrt(norm2)
        if r is not None:
            return np.vectorize(lambda v: Fraction(v) / r, otypes=[object])(M)
    M = np.asarray(M, dtype=float)
    return M / np.linalg.norm(M)


def _find_alpha(F: Biquadratic, M: np.ndarray, start: float, tol: Tolerances, max_iter: int = 40):
    """Largest alpha found (halving, then bisection) with F - alpha <x,My>^2 >= 0."""
    G = Biquadratic.square(np.vectorize(Fraction, otypes=[object])(M))
    scale = F.scale()
    floor = 100 * tol.zero_tol * scale

    def ok(alpha):
        res = min_on_spheres(F - G * alpha, tol)
        return res.value >= -tol.zero_tol * scale, res.value

    alpha = Fraction(start).limit_denominator(10**6) if start > 0 else Fraction(1)
    hi = None
    lo = lo_min = None
    it = 0
    while it < max_iter:
        it += 1
        good, val = ok(alpha)
        if good:
            lo, lo_min = alpha, val
            break
        hi = alpha
        alpha = alpha / 2
        if alpha < floor:
            return None, None
    if lo is None:
        return None, None
    for _ in range(min(10, max_iter - it)):
        if hi is None:
            break
        mid = (lo + hi) / 2
        good, val = ok(mid)
        if good:
            lo, lo_min = mid, val
        else:
            hi = mid
    if lo < floor:
        return None, None
    return lo, lo_min


def _check_nonnegative(F: Biquadratic, tol: Tolerances) -> float:
    res = min_on_spheres(F, tol)
    if res.value < -tol.zero_tol * res.scale:
        raise NotNonnegativeError(
            f"form is not nonnegative (min {res.value:.6g})",
            witness=res.negative_witness, value=res.value, exact=res.exact_negative)
    return res.value


def decide_weak_extremal(F: Biquadratic, zeros=None, tol: Tolerances = DEFAULT_TOL) -> WeakExtremalityVerdict:
    min_value = _check_nonnegative(F, tol)
    evidence = None
    if zeros is None:
        search = zero_search(F, tol)
        zeros, evidence = search.zeros, search.evidence
    lf = lf_space(F, zeros, tol)
    notes = kernel_dimension_diagnostics(zeros) + distinct_projection_check(zeros, tol)
    nm = F.n * F.m
    if lf.dim == nm:
        return WeakExtremalityVerdict("weak_extremal", lf.dim, lf, grade=lf.grade, evidence=evidence, notes=notes)
    M = _unit(orthogonal_complement(lf)[0])
    alpha, wmin = _find_alpha(F, M, max(min_value, 0.0) + 1.0, tol)
    if alpha is None:
        notes.append("no admissible alpha found by bisection; zero set may be incomplete")
        return WeakExtremalityVerdict("inconclusive", lf.dim, lf, witness_M=M, grade="numeric",
                                      evidence=evidence, notes=notes)
    return WeakExtremalityVerdict("not_weak_extremal", lf.dim, lf, witness_M=M, witness_alpha=alpha,
                                  witness_min=wmin, grade="numeric",
                                  evidence=evidence, notes=notes)


@dataclass
class StrongExtremalityVerdict:
    status: str  # strong_extremal | not_strong_extremal | square_not_decided | inconclusive
    reason: str
    weak: WeakExtremalityVerdict | None = None
    square_root: np.ndarray | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "weak": None if self.weak is None else self.weak.as_dict(),
        }


def decide_strong_extremal_3x3(F: Biquadratic, zeros=None, tol: Tolerances = DEFAULT_TOL) -> StrongExtremalityVerdict:
    if (F.n, F.m) != (3, 3):
        raise ValueError("strong extremality is decided only for 3x3 forms")
    M = is_perfect_square_biquadratic(F)
    if M is not None:
        return StrongExtremalityVerdict("square_not_decided", "perfect_square", square_root=M)
    weak = decide_weak_extremal(F, zeros, tol)
    if weak.status == "weak_extremal":
        return StrongExtremalityVerdict("strong_extremal", "weak_extremal_3x3", weak)
    if weak.status == "not_weak_extremal":
        return StrongExtremalityVerdict("not_strong_extremal", "not_weak_and_not_square", weak)
    return StrongExtremalityVerdict("inconclusive", "weak_extremality_inconclusive", weak)


def _same_projection(a, b, tol: Tolerances) -> bool:
    if all(isinstance(v, (int, Fraction)) for v in list(a) + list(b)):
        n = len(a)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))
    return projective_distance(a, b) <= tol.dedupe_tol


def distinct_projection_check(zeros, tol: Tolerances = DEFAULT_TOL) -> list[str]:
    """Warn for distinct zeros sharing an x- or a y-projection (forces a sum of squares)."""
    out = []
    for i in range(len(zeros)):
        for j in range(i + 1, len(zeros)):
            a, b = zeros[i], zeros[j]
            sx, sy = _same_projection(a.x, b.x, tol), _same_projection(a.y, b.y, tol)
            if sx and sy:
                continue
            if sx:
                out.append(f"zeros {i} and {j} share the x-projection: F is a sum of squares or the zeros are wrong")
            if sy:
                out.append(f"zeros {i} and {j} share the y-projection: F is a sum of squares or the zeros are wrong")
    return out


def kernel_dimension_diagnostics(zeros) -> list[str]:
    return [
        f"Hessian kernel at zero {i} has dimension {z.kernel_dim} > 4: F is a sum of squares"
        for i, z in enumerate(zeros) if z.kernel_dim > 4
    ]
