"""Bounds on the effective tensor of a two-phase composite.

Tensors are (n^2) x (n^2) symmetric matrices acting on n x n matrices
flattened row-major.  Exact input (object arrays of Fractions) stays exact;
float input uses numpy.  The translation bound

    T + (theta1 (C1 - T)^-1 + theta2 (C2 - T)^-1)^-1

is a lower bound when T is quasiconvex and C_i - T is positive definite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import MatrixQuadForm, minors_basis, sigma
from .linalg import DEFAULT_TOL, Tolerances, exact_inverse, is_exact
from .numerics import min_on_spheres

PD_REL = 1e-8
NEAR_SINGULAR_FACTOR = 100


def _as_tensor(C, exact=None) -> np.ndarray:
    A = np.asarray(C)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("a stiffness tensor is a square matrix")
    if exact is None:
        exact = is_exact(A)
    if exact:
        return np.vectorize(Fraction, otypes=[object])(A.astype(object))
    return A.astype(float)


def _side(C: np.ndarray) -> int:
    n = math.isqrt(C.shape[0])
    if n * n != C.shape[0]:
        raise ValueError(f"size {C.shape[0]} is not a square n^2")
    return n


def _symmetric(C: np.ndarray) -> bool:
    if C.dtype == object:
        return bool(np.all(C == C.T))
    return np.allclose(C, C.T, rtol=0, atol=1e-12 * max(1.0, np.abs(C).max()))


@dataclass(frozen=True)
class TwoPhase:
    C1: np.ndarray
    C2: np.ndarray
    theta1: object
    theta2: object

    def __post_init__(self):
        exact = is_exact(np.asarray(self.C1)) and is_exact(np.asarray(self.C2)) \
            and all(isinstance(t, (int, Fraction)) for t in (self.theta1, self.theta2))
        C1, C2 = _as_tensor(self.C1, exact), _as_tensor(self.C2, exact)
        if C1.shape != C2.shape:
            raise ValueError("phase tensors have different sizes")
        _side(C1)
        if not (_symmetric(C1) and _symmetric(C2)):
            raise ValueError("phase tensors must be symmetric")
        conv = Fraction if exact else float
        t1, t2 = conv(self.theta1), conv(self.theta2)
        if t1 < 0 or t2 < 0:
            raise ValueError("volume fractions must be nonnegative")
        if (t1 + t2 != 1) if exact else abs(t1 + t2 - 1) > 1e-12:
            raise ValueError("volume fractions must sum to 1")
        object.__setattr__(self, "C1", C1)
        object.__setattr__(self, "C2", C2)
        object.__setattr__(self, "theta1", t1)
        object.__setattr__(self, "theta2", t2)

    @property
    def exact(self) -> bool:
        return self.C1.dtype == object

    @property
    def n(self) -> int:
        return _side(self.C1)

    @classmethod
    def scalar(cls, c1, c2, theta1) -> TwoPhase:
        theta1 = Fraction(theta1)
        return cls(np.array([[Fraction(c1)]], dtype=object), np.array([[Fraction(c2)]], dtype=object),
                   theta1, 1 - theta1)


def _inv(A: np.ndarray) -> np.ndarray:
    return exact_inverse(A) if A.dtype == object else np.linalg.inv(A)


def _coerce(tp: TwoPhase, T) -> np.ndarray:
    if T is None or (np.isscalar(T) and T == 0):
        z = np.zeros(tp.C1.shape, dtype=object if tp.exact else float)
        return np.vectorize(Fraction, otypes=[object])(z) if tp.exact else z
    T = _as_tensor(T, tp.exact and is_exact(np.asarray(T)))
    if T.shape != tp.C1.shape:
        raise ValueError("translation has the wrong size")
    if T.dtype != tp.C1.dtype:
        return T.astype(float)
    return T


def _is_pd(A: np.ndarray, strict: float) -> tuple[bool, float]:
    lam = float(np.linalg.eigvalsh(np.asarray(A, dtype=float)).min())
    return lam > strict, lam


def arithmetic_mean_bound(tp: TwoPhase) -> np.ndarray:
    return tp.theta1 * tp.C1 + tp.theta2 * tp.C2


def harmonic_mean_bound(tp: TwoPhase) -> np.ndarray:
    for i, C in enumerate((tp.C1, tp.C2), 1):
        ok, lam = _is_pd(C, PD_REL * _norm(C))
        if not ok:
            raise ValueError(f"phase {i} is not positive definite (min eigenvalue {lam:.3e})")
    return _inv(tp.theta1 * _inv(tp.C1) + tp.theta2 * _inv(tp.C2))


def _norm(A) -> float:
    return float(np.linalg.norm(np.asarray(A, dtype=float), 2))


@dataclass
class TranslationReport:
    phases_pd: bool  # (a): C_i - T positive definite
    phase_gaps: list  # smallest eigenvalue of C_i - T
    quasiconvex: bool  # (b)
    quasiconvex_min: float
    quasiconvex_grade: str  # exact (null Lagrangian) | numeric
    warnings: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.phases_pd and self.quasiconvex

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "phases_pd": self.phases_pd,
            "phase_gaps": self.phase_gaps,
            "quasiconvex": self.quasiconvex,
            "quasiconvex_min": self.quasiconvex_min,
            "quasiconvex_grade": self.quasiconvex_grade,
            "warnings": list(self.warnings),
        }


def translation_form(T) -> MatrixQuadForm:
    T = np.asarray(T)
    n = _side(T)
    return MatrixQuadForm(n, n, np.vectorize(Fraction, otypes=[object])(T.astype(object)))


def check_translation(tp: TwoPhase, T, tol: Tolerances = DEFAULT_TOL) -> TranslationReport:
    T = _coerce(tp, T)
    warnings = []
    gaps, pd = [], True
    for i, C in enumerate((tp.C1, tp.C2), 1):
        strict = PD_REL * _norm(C)
        ok, lam = _is_pd(C - T, strict)
        gaps.append(lam)
        pd &= ok
        if ok and lam <= NEAR_SINGULAR_FACTOR * strict:
            warnings.append(f"near_singular: C{i} - T has smallest eigenvalue {lam:.3e}")
    F = sigma(translation_form(T))
    if F.is_zero():
        qc, qmin, grade = True, 0.0, "exact"
    else:
        res = min_on_spheres(F, tol)
        qmin, grade = float(res.value), "numeric"
        qc = qmin >= -tol.zero_tol * res.scale
    return TranslationReport(pd, gaps, qc, qmin, grade, warnings)


class InvalidTranslationError(ValueError):
    def __init__(self, message, report: TranslationReport):
        super().__init__(message)
        self.report = report


def translation_bound(tp: TwoPhase, T=None, check: bool = True, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    T = _coerce(tp, T)
    if check:
        report = check_translation(tp, T, tol)
        if not report.valid:
            raise InvalidTranslationError(
                "translation fails: " + ("C_i - T not positive definite" if not report.phases_pd
                                         else "T not quasiconvex"), report)
    return T + _inv(tp.theta1 * _inv(tp.C1 - T) + tp.theta2 * _inv(tp.C2 - T))


def minor_translation(n: int, coeffs) -> np.ndarray:
    """Coefficient matrix of sum_k coeffs[k] * (k-th 2x2 minor of an n x n matrix)."""
    basis = minors_basis(n, n)
    if len(coeffs) != len(basis):
        raise ValueError(f"expected {len(basis)} minor coefficients, got {len(coeffs)}")
    C = np.full((n * n, n * n), Fraction(0), dtype=object)
    for c, phi in zip(coeffs, basis):
        C = C + phi.C * Fraction(c)
    return C


def loewner_leq(A, B, tol: float = 1e-10) -> bool:
    """A <= B in the Loewner order, up to tol relative to the size of B - A."""
    A, B = np.asarray(A, dtype=float), np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    D = B - A
    if not np.allclose(D, D.T, rtol=0, atol=1e-12 * max(1.0, np.abs(D).max())):
        raise ValueError("loewner_leq expects symmetric matrices")
    scale = np.linalg.norm(D, 2)
    if scale == 0:
        return True
    return float(np.linalg.eigvalsh(D).min()) >= -tol * scale
