"""Sparse multivariate polynomials with exact (Fraction) or float coefficients.

A polynomial is a map from exponent tuples to coefficients.  Exponent tuples
compare lexicographically, which gives the monomial order used by
:func:`sqrt_poly` (x0 > x1 > ...).
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Sparse polynomial in ``nvars`` variables.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not match nvars={nvars}")
            if not _is_zero(c):
                clean[tuple(e)] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def const(cls, c, nvars: int) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs) -> Poly:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            raise TypeError("polynomial division is not supported")
        if isinstance(scalar, (int, Fraction)):
            scalar = Fraction(scalar)
        return Poly(self.nvars, {e: c / scalar for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(Fraction(1), self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def max_abs_coefficient(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    # calculus and evaluation -------------------------------------------
    def diff(self, i: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = c * k
        return Poly(self.nvars, out)

    def __call__(self, point):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for e, c in self.terms.items():
            t = c
            for xi, k in zip(point, e):
                if k:
                    t = t * xi**k
            total = total + t
        return total

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        """Float evaluation at each row of ``X``."""
        X = np.asarray(X, dtype=float)
        if not self.terms:
            return np.zeros(X.shape[0])
        E = np.array(list(self.terms), dtype=int)
        c = np.array([float(v) for v in self.terms.values()])
        mons = np.prod(X[:, None, :] ** E[None, :, :], axis=2)
        return mons @ c

    def gradient_polys(self) -> list[Poly]:
        return [self.diff(i) for i in range(self.nvars)]

    def hessian_polys(self) -> list[list[Poly]]:
        g = self.gradient_polys()
        return [[gi.diff(j) for j in range(self.nvars)] for gi in g]

    def compose(self, polys) -> Poly:
        """Substitute ``polys[i]`` for variable i."""
        if len(polys) != self.nvars:
            raise ValueError("wrong number of substitutions")
        target = polys[0].nvars
        powers: dict = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = polys[i] ** k
            return powers[(i, k)]

        out = Poly(target)
        for e, c in self.terms.items():
            t = Poly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    def linear_change(self, A) -> Poly:
        """Return ``f(A u)`` for a square matrix ``A``."""
        n = self.nvars
        subs = [Poly.linear([A[i][j] for j in range(n)]) for i in range(n)]
        return self.compose(subs)

    def map_coeffs(self, fn) -> Poly:
        return Poly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def to_float(self) -> Poly:
        return self.map_coeffs(float)

    def chop(self, threshold: float) -> Poly:
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if abs(c) > threshold})

    # display ------------------------------------------------------------
    def to_string(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"({c})*{mon}" if mon else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_string()})"


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, lex-descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt_poly(f: Poly) -> Poly | None:
    """Exact square root over Q of a homogeneous polynomial, up to sign.

    Returns ``g`` with ``g*g == f`` and positive leading coefficient, or None.
    Works term by term in lex order: each new term of ``g`` is the leading
    term of the remainder divided by twice the leading term of ``g``.
    """
    if f.is_zero():
        return Poly(f.nvars)
    if not f.is_homogeneous():
        return None
    d = f.degree()
    if d % 2:
        return None
    e0, c0 = f.leading_term()
    if any(k % 2 for k in e0):
        return None
    r0 = fraction_sqrt(c0)
    if r0 is None:
        return None
    lead_e = tuple(k // 2 for k in e0)
    g = Poly(f.nvars, {lead_e: r0})
    budget = len(monomials(f.nvars, d // 2))
    for _ in range(budget + 1):
        r = f - g * g
        if r.is_zero():
            return g
        e, c = r.leading_term()
        te = tuple(a - b for a, b in zip(e, lead_e))
        if min(te) < 0 or te >= min(g.terms):
            return None
        g = g + Poly(f.nvars, {te: c / (2 * r0)})
    return None
