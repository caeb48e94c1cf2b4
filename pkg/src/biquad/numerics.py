"""Floating-point search on sphere products and the domination constant.

Minimizing F over |x| = |y| = 1 is reduced to minimizing the smallest
eigenvalue of the x-matrix T(x) over the unit x-sphere (F = y^T T(x) y).
A lattice sweep selects seeds; each seed is refined jointly in (x, y)
starting from the eigenvector of the smallest eigenvalue.

Everything here is evidence, not proof: zero sets are searched, not
enumerated, and the reports say so.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import cKDTree

from .forms import Biquadratic, ZeroDatum, evaluate, gradient, make_zero_datum, x_matrix
from .linalg import DEFAULT_TOL, Tolerances, kernel_basis  # noqa: F401  (re-exported)
from .poly import Poly


class NotNonnegativeError(ValueError):
    """Raised when a form is certified (or numerically found) negative."""

    def __init__(self, message, witness=None, value=None, exact=False):
        super().__init__(message)
        self.witness = witness
        self.value = value
        self.exact = exact


class NotDominatedError(ValueError):
    pass


# domination constant ------------------------------------------------------


def domination_alpha(Q1, Q2, tol: Tolerances = DEFAULT_TOL) -> float:
    """alpha > 0 with Q1 - alpha*Q2 PSD, as smallest nonzero eig(Q1) / largest eig(Q2).

    Returns ``math.inf`` when Q2 is zero.
    """
    A = np.asarray(Q1, dtype=float)
    B = np.asarray(Q2, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError("Q1 and Q2 must be square matrices of the same size")
    A, B = (A + A.T) / 2, (B + B.T) / 2
    wa, Va = np.linalg.eigh(A)
    wb = np.linalg.eigvalsh(B)
    na = max(np.max(np.abs(wa)), 0.0)
    nb = max(np.max(np.abs(wb)), 0.0)
    if wa[0] < -tol.eig_tol * max(na, 1.0) or wb[0] < -tol.eig_tol * max(nb, 1.0):
        raise ValueError("Q1 and Q2 must be positive semidefinite")
    if nb <= tol.eig_tol:
        return math.inf
    zero = wa <= tol.eig_tol * na if na > 0 else np.ones_like(wa, dtype=bool)
    K = Va[:, zero]
    contain_tol = max(1e-8, 100 * tol.eig_tol)
    if K.shape[1] and np.linalg.norm(B @ K, 2) > contain_tol * nb:
        raise NotDominatedError("not dominated: ker Q1 is not contained in ker Q2")
    lam1 = np.min(wa[~zero])
    lam2 = np.max(wb)
    return float(lam1 / lam2)


# lattices -----------------------------------------------------------------


def sphere_lattice(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` points on the unit sphere in R^n (Fibonacci lattice for n = 3)."""
    if n == 1:
        return np.ones((1, 1))
    if n == 2:
        t = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
        return np.column_stack([np.cos(t), np.sin(t)])
    if n == 3:
        i = np.arange(count) + 0.5
        z = 1 - 2 * i / count
        r = np.sqrt(np.maximum(0.0, 1 - z * z))
        phi = np.pi * (3 - np.sqrt(5)) * i
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def lattice_spacing(n: int, count: int) -> float:
    """Typical distance between neighbouring points of ``sphere_lattice(n, count)``."""
    if n == 1:
        return 0.0
    count = max(count, 1)
    if n == 2:
        return 2 * math.pi / count
    area = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
    return (area / count) ** (1 / (n - 1))


def projective_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


def _local_minima(X: np.ndarray, vals: np.ndarray, k: int) -> np.ndarray:
    if len(X) <= 1:
        return np.arange(len(X))
    k = min(k, len(X))
    _, nbr = cKDTree(X).query(X, k=k)
    is_min = np.all(vals[:, None] <= vals[nbr], axis=1)
    idx = np.flatnonzero(is_min)
    return idx[np.argsort(vals[idx], kind="stable")]


def _pick_seeds(X, vals, tol: Tolerances, n: int):
    order = _local_minima(X, vals, k=2 * n + 5)
    spacing = lattice_spacing(n, len(X))
    seeds: list[int] = []
    for i in order:
        if all(projective_distance(X[i], X[j]) > 3 * spacing for j in seeds):
            seeds.append(int(i))
        if len(seeds) >= tol.max_seeds:
            break
    return seeds


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(v)))
    return v if v[j] >= 0 else -v


def rationalize(v, max_denominator: int = 10**6) -> tuple[Fraction, ...]:
    """Scale so the largest entry is 1, then round each entry to a nearby fraction."""
    v = np.asarray(v, dtype=float)
    v = _canonical_sign(v)
    v = v / np.max(np.abs(v))
    return tuple(Fraction(float(c)).limit_denominator(max_denominator) for c in v)


# biquadratic on sphere products -------------------------------------------


class _BiquadNumeric:
    """Float evaluation helpers for F normalized by its largest coefficient."""

    def __init__(self, F: Biquadratic):
        self.F = F
        self.n, self.m = F.n, F.m
        self.scale = F.scale()
        self.C = F.float_tensor / self.scale
        self.A = x_matrix(F).float_tensor() / self.scale

    def x_matrices(self, X: np.ndarray) -> np.ndarray:
        return np.einsum("abik,Ni,Nk->Nab", self.A, X, X)

    def value(self, x, y) -> float:
        return float(np.einsum("ijkl,i,j,k,l->", self.C, x, y, x, y))

    def grad(self, x, y):
        gx = 2 * np.einsum("ijkl,j,k,l->i", self.C, y, x, y)
        gy = 2 * np.einsum("ijkl,i,k,l->j", self.C, x, x, y)
        return gx, gy

    def hess(self, x, y) -> np.ndarray:
        Hxx = 2 * np.einsum("ijkl,j,l->ik", self.C, y, y)
        Hyy = 2 * np.einsum("ijkl,i,k->jl", self.C, x, x)
        Hxy = 4 * np.einsum("ijkl,k,l->ij", self.C, x, y)
        return np.block([[Hxx, Hxy], [Hxy.T, Hyy]])

    def ratio(self, z):
        x, y = z[: self.n], z[self.n:]
        a, b = x @ x, y @ y
        f = self.value(x, y)
        gx, gy = self.grad(x, y)
        phi = f / (a * b)
        g = np.concatenate([gx / (a * b) - 2 * f * x / (a * a * b), gy / (a * b) - 2 * f * y / (a * b * b)])
        return phi, g

    def refine(self, x0, y0):
        z0 = np.concatenate([x0, y0])
        res = minimize(self.ratio, z0, jac=True, method="BFGS", options={"gtol": 1e-13, "maxiter": 500})
        x, y = res.x[: self.n], res.x[self.n:]
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        return x, y, self.value(x, y)

    def polish(self, x, y, iters: int = 40):
        """Gauss-Newton on grad F = 0 with |x| = |y| = 1."""
        n = self.n
        for _ in range(iters):
            gx, gy = self.grad(x, y)
            r = np.concatenate([gx, gy, [x @ x - 1, y @ y - 1]])
            if np.linalg.norm(r) < 1e-15:
                break
            H = self.hess(x, y)
            J = np.vstack([
                H,
                np.concatenate([2 * x, np.zeros(self.m)]),
                np.concatenate([np.zeros(n), 2 * y]),
            ])
            dz = np.linalg.lstsq(J, -r, rcond=None)[0]
            x, y = x + dz[:n], y + dz[n:]
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        return x, y, self.value(x, y)


@dataclass
class _Exploration:
    X: np.ndarray
    lam: np.ndarray
    refined: list  # (x, y, normalized value)


def _explore(num: _BiquadNumeric, tol: Tolerances) -> _Exploration:
    X = sphere_lattice(num.n, tol.grid_density, tol.seed)
    T = num.x_matrices(X)
    w, V = np.linalg.eigh(T)
    lam = w[:, 0]
    refined = []
    for i in _pick_seeds(X, lam, tol, num.n):
        starts = [V[i, :, 0]]
        if num.m > 1 and w[i, 1] <= tol.zero_tol:
            starts.append(V[i, :, 1])
        for y0 in starts:
            refined.append(num.refine(X[i].copy(), y0.copy()))
    return _Exploration(X, lam, refined)


@dataclass
class SphereMinimum:
    """Minimum of F over |x| = |y| = 1 (in F's own units)."""

    value: float
    argmins: list
    lattice_min: float
    scale: float
    negative_witness: tuple | None = None
    exact_negative: bool = False
    exact_value: Fraction | None = None

    def __iter__(self):
        return iter((self.value, self.argmins))


def _pair_distance(a, b) -> float:
    return max(projective_distance(a[0], b[0]), projective_distance(a[1], b[1]))


def _dedupe(pairs, radius: float):
    out = []
    for p in pairs:
        if all(_pair_distance(p, q) > radius for q in out):
            out.append(p)
    return out


def min_on_spheres(F: Biquadratic, tol: Tolerances = DEFAULT_TOL) -> SphereMinimum:
    """Approximate min of F on the product of unit spheres (nonnegativity oracle)."""
    if F.is_zero():
        x = np.eye(F.n)[0]
        y = np.eye(F.m)[0]
        return SphereMinimum(0.0, [(x, y)], 0.0, 1.0)
    num = _BiquadNumeric(F)
    ex = _explore(num, tol)
    best = min(v for _, _, v in ex.refined)
    best = min(best, float(np.min(ex.lam)))
    near = [(x, y) for x, y, v in ex.refined if v <= best + tol.zero_tol]
    if not near:
        i = int(np.argmin(ex.lam))
        T = num.x_matrices(ex.X[i:i + 1])[0]
        near = [(ex.X[i], np.linalg.eigh(T)[1][:, 0])]
    argmins = _dedupe(near, tol.dedupe_tol)
    result = SphereMinimum(best * num.scale, argmins, float(np.min(ex.lam)) * num.scale, num.scale)
    if best < -tol.zero_tol:
        x, y = argmins[0]
        xr, yr = rationalize(x), rationalize(y)
        val = evaluate(F, xr, yr)
        result.negative_witness = (xr, yr)
        result.exact_value = val
        result.exact_negative = val < 0
    return result


@dataclass
class ZeroSearchEvidence:
    """How much the zero search can vouch for exhaustiveness."""

    grid_density: int
    exclusion_radius: float
    n_zeros: int
    outside_min: float
    stray_minima: list = field(default_factory=list)
    extra_zeros: int = 0
    exhaustive: bool = False
    possibly_infinite: bool = False
    lattice_spacing: float = 0.0

    def as_dict(self) -> dict:
        return {
            "grid_density": self.grid_density,
            "exclusion_radius": self.exclusion_radius,
            "n_zeros": self.n_zeros,
            "outside_min": self.outside_min,
            "stray_minima": list(self.stray_minima),
            "extra_zeros": self.extra_zeros,
            "exhaustive": self.exhaustive,
            "possibly_infinite": self.possibly_infinite,
            "lattice_spacing": self.lattice_spacing,
        }


@dataclass
class ZeroSearch:
    zeros: list
    evidence: ZeroSearchEvidence


# a nonnegative ternary sextic or biquadratic on P2 x P2 with more zeros
# than this is a sum of squares with infinitely many zeros
MAX_ISOLATED_ZEROS = 10


# flat zeros are located only to about tol^(1/d); small denominators first
SNAP_DENOMINATORS = (1, 2, 4, 10, 100, 10**3, 10**4, 10**6)


def _exact_zero(F: Biquadratic, x, y):
    for D in SNAP_DENOMINATORS:
        xr, yr = rationalize(x, D), rationalize(y, D)
        if evaluate(F, xr, yr) == 0 and all(g == 0 for g in gradient(F, xr, yr)):
            return xr, yr
    return None


def _exact_sextic_zero(f: Poly, x):
    if not f.is_exact():
        return None
    grads = f.gradient_polys()
    for D in SNAP_DENOMINATORS:
        xr = list(rationalize(x, D))
        if f(xr) == 0 and all(g(xr) == 0 for g in grads):
            return tuple(xr)
    return None


def zero_search(F: Biquadratic, tol: Tolerances = DEFAULT_TOL, known=()) -> ZeroSearch:
    """Search for the projective zeros of a nonnegative biquadratic.

    ``known`` zero pairs (e.g. prescribed ones) are merged into the result;
    found zeros not among them are counted in ``evidence.extra_zeros``.
    """
    if F.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    num = _BiquadNumeric(F)
    ex = _explore(num, tol)
    best = min([v for _, _, v in ex.refined] + [float(np.min(ex.lam))])
    if best < -tol.zero_tol:
        i = min(range(len(ex.refined)), key=lambda j: ex.refined[j][2])
        x, y, v = ex.refined[i]
        xr, yr = rationalize(x), rationalize(y)
        val = evaluate(F, xr, yr)
        raise NotNonnegativeError(
            f"form takes negative values (normalized min {v:.3e})",
            witness=(xr, yr), value=v * num.scale, exact=val < 0,
        )
    candidates = []
    for x, y, v in ex.refined:
        if v <= max(1e-6, 1e3 * tol.zero_tol):
            x, y, v = num.polish(x, y)
        if abs(v) <= tol.zero_tol:
            candidates.append((x, y))
    snapped = []
    for x, y in candidates:
        exact = _exact_zero(F, x, y)
        snapped.append(exact if exact is not None else (x, y))
    found = _dedupe(snapped, tol.dedupe_tol)

    known_f = [(np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)) for kx, ky in known]
    extra = [p for p in found if all(_pair_distance(p, k) > tol.dedupe_tol * 10 for k in known_f)]
    zeros: list[ZeroDatum] = [make_zero_datum(F, kx, ky, tol=tol) for kx, ky in known]
    for x, y in extra:
        zeros.append(make_zero_datum(F, x, y, exact=isinstance(x[0], Fraction), tol=tol))

    xs = [np.asarray(z.x, dtype=float) for z in zeros]
    outside = np.ones(len(ex.X), dtype=bool)
    for x in xs:
        x = x / np.linalg.norm(x)
        d = np.minimum(np.linalg.norm(ex.X - x, axis=1), np.linalg.norm(ex.X + x, axis=1))
        outside &= d > tol.exclusion_radius
    outside_min = float(np.min(ex.lam[outside])) if outside.any() else math.inf
    stray = [float(v) for x, y, v in ex.refined
             if all(projective_distance(x, z) > tol.exclusion_radius for z in xs)]
    possibly_infinite = len(zeros) > MAX_ISOLATED_ZEROS
    spacing = lattice_spacing(F.n, len(ex.X))
    exhaustive = (outside_min > tol.zero_tol and all(v > tol.zero_tol for v in stray)
                  and not possibly_infinite and spacing <= tol.exclusion_radius)
    evidence = ZeroSearchEvidence(
        tol.grid_density, tol.exclusion_radius, len(zeros), outside_min,
        stray, len(extra) if known else 0, exhaustive, possibly_infinite, spacing,
    )
    if len(zeros) <= MAX_ISOLATED_ZEROS:
        from .extremality import distinct_projection_check

        for w in distinct_projection_check(zeros, tol):
            warnings.warn(w, stacklevel=2)
    return ZeroSearch(zeros, evidence)


def find_zeros(F: Biquadratic, tol: Tolerances = DEFAULT_TOL) -> list[ZeroDatum]:
    return zero_search(F, tol).zeros


# ternary sextics on the 2-sphere ----------------------------------------------


class _FastPoly:
    def __init__(self, p: Poly):
        self.E = np.array(list(p.terms) or [(0,) * p.nvars], dtype=float)
        self.c = np.array([float(v) for v in p.terms.values()] or [0.0])

    def __call__(self, x):
        return float(self.c @ np.prod(np.asarray(x, dtype=float)[None, :] ** self.E, axis=1))


class _SexticNumeric:
    def __init__(self, f: Poly):
        self.f = f
        self.scale = f.max_abs_coefficient() or 1.0
        g = f.map_coeffs(lambda c: float(c) / self.scale)
        self.g = g
        self.fv = _FastPoly(g)
        self.fg = [_FastPoly(p) for p in g.gradient_polys()]
        self.fh = [[_FastPoly(q) for q in row] for row in g.hessian_polys()]
        self.d = max(f.degree(), 0)

    def ratio(self, x):
        a = x @ x
        v = self.fv(x)
        g = np.array([h(x) for h in self.fg])
        return v / a ** (self.d / 2), g / a ** (self.d / 2) - self.d * v * x / a ** (self.d / 2 + 1)

    def refine(self, x0):
        res = minimize(self.ratio, x0, jac=True, method="BFGS", options={"gtol": 1e-13, "maxiter": 500})
        x = res.x / np.linalg.norm(res.x)
        return x, self.fv(x)

    def polish(self, x, iters: int = 40):
        for _ in range(iters):
            g = np.array([h(x) for h in self.fg])
            r = np.concatenate([g, [x @ x - 1]])
            if np.linalg.norm(r) < 1e-15:
                break
            H = np.array([[h(x) for h in row] for row in self.fh])
            J = np.vstack([H, 2 * x])
            x = x + np.linalg.lstsq(J, -r, rcond=None)[0]
        x = x / np.linalg.norm(x)
        return x, self.fv(x)


@dataclass
class SexticZeroSearch:
    zeros: list  # tuples of Fractions (exact) or floats (numeric, unit norm)
    grades: list
    evidence: ZeroSearchEvidence
    minimum: float


def sextic_zero_search(f: Poly, tol: Tolerances = DEFAULT_TOL, known=()) -> SexticZeroSearch:
    """Zeros of a nonnegative ternary form on the real projective plane."""
    if f.nvars != 3:
        raise ValueError("expected a ternary form")
    num = _SexticNumeric(f)
    X = sphere_lattice(3, tol.grid_density, tol.seed)
    vals = num.g.evaluate_many(X)
    refined = [num.refine(X[i].copy()) for i in _pick_seeds(X, vals, tol, 3)]
    best = min([v for _, v in refined] + [float(np.min(vals))])
    if best < -tol.zero_tol:
        x, v = min(refined, key=lambda t: t[1])
        raise NotNonnegativeError(f"form takes negative values (normalized min {v:.3e})",
                                  witness=rationalize(x), value=v * num.scale)
    cands = []
    for x, v in refined:
        if v <= max(1e-6, 1e3 * tol.zero_tol):
            x, v = num.polish(x)
        if abs(v) <= tol.zero_tol:
            cands.append(x)
    snapped = []
    for x in cands:
        xr = _exact_sextic_zero(f, x)
        snapped.append(xr if xr is not None else tuple(float(c) for c in x))
    found = []
    for x in snapped:
        if all(projective_distance(x, y) > tol.dedupe_tol for y in found):
            found.append(x)
    known_f = [np.asarray(k, dtype=float) for k in known]
    extra = [x for x in found if all(projective_distance(x, k) > 10 * tol.dedupe_tol for k in known_f)]
    zeros, grades = [tuple(Fraction(c) for c in k) for k in known], ["exact"] * len(known)
    for x in extra:
        zeros.append(x)
        grades.append("exact" if isinstance(x[0], Fraction) else "numeric")
    outside = np.ones(len(X), dtype=bool)
    for z in zeros:
        z = np.asarray(z, dtype=float)
        z = z / np.linalg.norm(z)
        d = np.minimum(np.linalg.norm(X - z, axis=1), np.linalg.norm(X + z, axis=1))
        outside &= d > tol.exclusion_radius
    outside_min = float(np.min(vals[outside])) if outside.any() else math.inf
    stray = [float(v) for x, v in refined
             if all(projective_distance(x, z) > tol.exclusion_radius for z in zeros)]
    possibly_infinite = len(zeros) > MAX_ISOLATED_ZEROS
    spacing = lattice_spacing(3, len(X))
    exhaustive = (outside_min > tol.zero_tol and all(v > tol.zero_tol for v in stray)
                  and not possibly_infinite and spacing <= tol.exclusion_radius)
    ev = ZeroSearchEvidence(tol.grid_density, tol.exclusion_radius, len(zeros), outside_min,
                            stray, len(extra) if known else 0, exhaustive, possibly_infinite, spacing)
    return SexticZeroSearch(zeros, grades, ev, best * num.scale)
