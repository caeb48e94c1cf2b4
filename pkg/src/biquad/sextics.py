"""Ternary sextics: acoustic determinants, double-point types, extremality rules.

A real zero P of a nonnegative ternary sextic is a double point of the
complex curve.  Moving P to (0:0:1) and setting z = 1 gives a local
equation g(u, v) whose quadratic part has rank 2 (node, A1), rank 1, or 0.
In the rank-1 case the quadratic part is rotated to a*u^2 and the mixed
terms u*v^k are removed by u -> u - c*v^k for k = 2..7; the lowest surviving
pure power v^s then identifies A_{s-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import Biquadratic, x_matrix
from .linalg import DEFAULT_TOL, Tolerances, exact_rank, numeric_rank
from .poly import Poly, fraction_sqrt, sqrt_poly

DELTA = {"A1": 1, "A3": 2, "A5": 3, "node_indefinite": 1}
JET_ORDER = 7
_V_TRUNC = JET_ORDER + 1
_NUMERIC_REL = 1e-8


class TernarySextic(Poly):
    """Homogeneous degree-6 polynomial in three variables (or zero)."""

    __slots__ = ()

    def __init__(self, terms=None):
        super().__init__(3, terms)
        if not self.is_homogeneous(6):
            raise ValueError("a ternary sextic must be homogeneous of degree 6")

    @classmethod
    def from_poly(cls, p: Poly) -> TernarySextic:
        if p.nvars != 3:
            raise ValueError("expected a polynomial in three variables")
        return cls(p.terms)

    @classmethod
    def from_records(cls, records) -> TernarySextic:
        terms: dict = {}
        for a, b, c, value in records:
            if a + b + c != 6 or min(a, b, c) < 0:
                raise ValueError(f"exponents ({a}, {b}, {c}) do not form a sextic monomial")
            terms[(a, b, c)] = terms.get((a, b, c), 0) + Fraction(value)
        return cls(terms)

    def to_records(self):
        return [(a, b, c, v) for (a, b, c), v in sorted(self.terms.items(), reverse=True)]


def det_x_matrix(F: Biquadratic) -> TernarySextic:
    """det T(x) for a biquadratic on R^3 x R^3."""
    if (F.n, F.m) != (3, 3):
        raise ValueError("det T(x) is a ternary sextic only for 3x3 forms")
    return TernarySextic.from_poly(x_matrix(F).det())


def _exact_point(P) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in P)


def _critical_zero_check(f: Poly, P, exact: bool, tol: Tolerances):
    if exact:
        P = [Fraction(c) for c in P]
        if f(P) != 0 or any(g(P) != 0 for g in f.gradient_polys()):
            raise ValueError(f"{tuple(P)} is not a critical zero of f")
        return
    Pf = np.asarray(P, dtype=float)
    Pf = Pf / np.linalg.norm(Pf)
    scale = f.max_abs_coefficient() or 1.0
    fl = f.to_float()
    thr = max(tol.zero_tol, 1e-7) * scale
    if abs(fl(list(Pf))) > thr or any(abs(g(list(Pf))) > 10 * thr for g in fl.gradient_polys()):
        raise ValueError(f"{tuple(P)} is not a critical zero of f")


def hessian_at(f: Poly, P) -> np.ndarray:
    vals = [[h(list(P)) for h in row] for row in f.hessian_polys()]
    if _exact_point(P) and f.is_exact():
        return np.array(vals, dtype=object)
    return np.array(vals, dtype=float)


def hessian_rank_at(f: Poly, P, tol: Tolerances = DEFAULT_TOL) -> int:
    exact = _exact_point(P) and f.is_exact()
    _critical_zero_check(f, P, exact, tol)
    if exact:
        return exact_rank(hessian_at(f, [Fraction(c) for c in P]).tolist())
    Pf = np.asarray(P, dtype=float)
    return numeric_rank(hessian_at(f.to_float(), list(Pf / np.linalg.norm(Pf))), _NUMERIC_REL)


@dataclass
class SingularityReport:
    point: tuple
    hessian_rank: int
    type: str  # A1 | A3 | A5 | degenerate | node_indefinite
    delta: int | None
    grade: str
    pure_order: int | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "point": [str(c) for c in self.point],
            "hessian_rank": self.hessian_rank,
            "type": self.type,
            "delta": self.delta,
            "grade": self.grade,
            "pure_order": self.pure_order,
            "note": self.note,
        }


def _move_to_origin(f: Poly, P, exact: bool):
    r = int(np.argmax([abs(float(c)) for c in P]))
    others = [i for i in range(3) if i != r]
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    cols = [[one if i == j else zero for i in range(3)] for j in others]
    cols.append([Fraction(c) if exact else float(c) for c in P])
    A = [[cols[j][i] for j in range(3)] for i in range(3)]
    g3 = f.linear_change(A)
    return Poly(2, {(a, b): c for (a, b, _), c in g3.terms.items()})


def _truncate(g: Poly) -> Poly:
    return Poly(2, {e: c for e, c in g.terms.items() if e[1] <= _V_TRUNC})


def _classify_local(g: Poly, exact: bool):
    """Type of the double point of g(u, v) at the origin."""
    thr = 0.0 if exact else _NUMERIC_REL * (g.max_abs_coefficient() or 1.0)

    def nz(c):
        return abs(c) > thr

    if not exact:
        g = g.chop(thr)
    a, b2, c = g.coefficient((2, 0)), g.coefficient((1, 1)), g.coefficient((0, 2))
    Q = np.array([[a, b2 / 2], [b2 / 2, c]], dtype=object if exact else float)
    if exact:
        rank = exact_rank(Q.tolist())
    else:
        rank = numeric_rank(Q, _NUMERIC_REL) if nz(abs(Q).max()) else 0
    if rank == 2:
        det = a * c - (b2 / 2) ** 2
        return (2, "A1", None) if det > 0 else (2, "node_indefinite", None)
    if rank == 0:
        return 0, "degenerate", None
    u, v = Poly.var(0, 2), Poly.var(1, 2)
    if nz(a):
        g = _truncate(g.compose([u - v * (b2 / (2 * a)), v]))
    else:
        g = _truncate(g.compose([v, u]))
    if not exact:
        g = g.chop(thr)
    lead = g.coefficient((2, 0))
    for k in range(2, JET_ORDER + 1):
        e = g.coefficient((1, k))
        if nz(e):
            g = _truncate(g.compose([u - v ** k * (e / (2 * lead)), v]))
            if not exact:
                g = g.chop(thr)
    for s in range(3, JET_ORDER + 1):
        if nz(g.coefficient((0, s))):
            return 1, {4: "A3", 6: "A5"}.get(s, "degenerate"), s
    return 1, "degenerate", None


def classify_singularity(f: Poly, P, tol: Tolerances = DEFAULT_TOL) -> SingularityReport:
    exact = _exact_point(P) and f.is_exact()
    _critical_zero_check(f, P, exact, tol)
    if exact:
        Pn = tuple(Fraction(c) for c in P)
        g = _move_to_origin(f, Pn, True)
    else:
        Pf = np.asarray(P, dtype=float)
        Pn = tuple(Pf / np.linalg.norm(Pf))
        fl = f.to_float()
        g = _move_to_origin(fl.map_coeffs(lambda c: c / (fl.max_abs_coefficient() or 1.0)), Pn, False)
    rank, kind, s = _classify_local(g, exact)
    note = ""
    if rank == 0:
        note = "Hessian vanishes: a nonnegative sextic is then a sum of squares"
    elif kind == "degenerate":
        note = "no pure power up to order 7" if s is None else f"lowest pure power v^{s}"
    return SingularityReport(Pn, rank, kind, DELTA.get(kind), "exact" if exact else "numeric", s, note)


def delta_sum(reports) -> int:
    return sum(r.delta or 0 for r in reports)


def is_perfect_square_sextic(f: Poly):
    """Cubic c with f = c^2, or None.

    c has rational coefficients when the leading coefficient of f is a
    rational square and float coefficients otherwise.
    """
    if f.is_zero():
        return Poly(3)
    if not f.is_exact():
        f = f.map_coeffs(Fraction)
    lc = f.leading_term()[1]
    if lc <= 0:
        return None
    c = sqrt_poly(f / lc)
    if c is None:
        return None
    r = fraction_sqrt(lc)
    if r is not None:
        return c * r
    return c.to_float() * float(lc) ** 0.5


@dataclass
class SexticExtremalityVerdict:
    status: str  # extremal | extremal_conditional_on_not_sos | not_extremal | sos_detected | inconclusive
    reason: str
    delta_sum: int
    square_root: Poly | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "delta_sum": self.delta_sum,
            "square_root": None if self.square_root is None else self.square_root.to_string(["x", "y", "z"]),
            "notes": list(self.notes),
        }


def decide_sextic_extremality(f: Poly, reports, evidence=None, not_sos: str = "unknown") -> SexticExtremalityVerdict:
    """Apply the extremality rules in order; see the module docstring of ``sextics``.

    ``evidence`` is a ``ZeroSearchEvidence`` for the real zeros of f (or None);
    ``not_sos`` is "asserted" when the caller knows f is not a sum of squares.
    """
    if not_sos not in ("asserted", "unknown"):
        raise ValueError("not_sos must be 'asserted' or 'unknown'")
    reports = list(reports)
    if evidence is not None and evidence.n_zeros != len(reports):
        raise ValueError(
            f"evidence inconsistent with reports: {evidence.n_zeros} zeros vs {len(reports)} reports")
    ds = delta_sum(reports)
    square = is_perfect_square_sextic(f)
    sos = (
        square is not None
        or any(r.hessian_rank == 0 for r in reports)
        or any(r.type == "degenerate" and r.pure_order is None for r in reports)
        or (evidence is not None and evidence.possibly_infinite)
    )
    if sos:
        if square is not None:
            return SexticExtremalityVerdict("sos_detected", "square_not_decided", ds, square)
        return SexticExtremalityVerdict("not_extremal", "sos_not_square", ds)
    if any(r.type == "degenerate" or r.type == "node_indefinite" for r in reports):
        return SexticExtremalityVerdict("inconclusive", "singularity_incompatible_with_nonnegativity", ds)
    nine_nodes = len(reports) == 9 and all(r.type == "A1" for r in reports)
    if nine_nodes and evidence is not None and evidence.n_zeros == 9 and evidence.exhaustive:
        return SexticExtremalityVerdict("not_extremal", "nine_nodes_no_tenth_zero", ds)
    if ds == 10 and not_sos == "asserted":
        return SexticExtremalityVerdict("extremal", "delta_sum_10", ds)
    if ds == 10:
        return SexticExtremalityVerdict("extremal_conditional_on_not_sos", "delta_sum_10", ds)
    if nine_nodes:
        return SexticExtremalityVerdict("inconclusive", "tenth_zero_evidence_insufficient", ds)
    return SexticExtremalityVerdict("inconclusive", "no_rule_applies", ds)
