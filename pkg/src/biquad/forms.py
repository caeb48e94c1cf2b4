"""Quadratic forms on n x m matrices and biquadratic forms.

A :class:`Biquadratic` stores one exact coefficient per monomial
``x_i x_k y_j y_l`` (i <= k, j <= l).  The matrix-side object
:class:`MatrixQuadForm` stores the symmetric coefficient matrix ``C`` of
``Phi(Z) = <Z, C Z>`` with entry (i, j) of Z flattened to ``i*m + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances, as_object_array, exact_nullspace, kernel_basis
from .poly import Poly, fraction_sqrt, sqrt_poly


def index_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, k) for i in range(n) for k in range(i, n)]


def biquadratic_monomials(n: int, m: int):
    """Canonical monomial order: ((i, k), (j, l)) for x_i x_k y_j y_l."""
    return [(a, b) for a in index_pairs(n) for b in index_pairs(m)]


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _multiplicity(key) -> int:
    (i, k), (j, l) = key
    return (1 if i == k else 2) * (1 if j == l else 2)


def _exact_vector(v):
    return tuple(Fraction(c) for c in v)


def _out_array(values):
    vals = list(values)
    if all(isinstance(v, (int, Fraction)) for v in vals):
        return np.array(vals, dtype=object)
    return np.array([float(v) for v in vals])


@dataclass(frozen=True)
class Biquadratic:
    n: int
    m: int
    coeffs: tuple

    def __post_init__(self):
        expected = len(index_pairs(self.n)) * len(index_pairs(self.m))
        if len(self.coeffs) != expected:
            raise ValueError(f"expected {expected} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    # construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, n: int, m: int, coeffs: dict) -> Biquadratic:
        """Keys are ((i, k), (j, l)) in any order within each pair."""
        acc: dict = {}
        for ((i, k), (j, l)), v in coeffs.items():
            key = (_pair(i, k), _pair(j, l))
            acc[key] = acc.get(key, 0) + Fraction(v)
        return cls(n, m, tuple(acc.get(key, Fraction(0)) for key in biquadratic_monomials(n, m)))

    @classmethod
    def from_tensor_records(cls, n: int, m: int, records) -> Biquadratic:
        """Sum of ``value * x_i y_j x_k y_l`` over records (i, j, k, l, value)."""
        acc: dict = {}
        for i, j, k, l, v in records:
            if not (0 <= i < n and 0 <= k < n and 0 <= j < m and 0 <= l < m):
                raise ValueError(f"index out of range in record {(i, j, k, l)}")
            key = (_pair(i, k), _pair(j, l))
            acc[key] = acc.get(key, 0) + Fraction(v)
        return cls.from_dict(n, m, acc)

    @classmethod
    def from_poly(cls, poly: Poly, n: int, m: int) -> Biquadratic:
        acc = {}
        for e, c in poly.terms.items():
            xs = [i for i in range(n) for _ in range(e[i])]
            ys = [j for j in range(m) for _ in range(e[n + j])]
            if len(xs) != 2 or len(ys) != 2:
                raise ValueError("polynomial is not biquadratic")
            acc[(tuple(xs), tuple(ys))] = c
        return cls.from_dict(n, m, acc)

    @classmethod
    def zero(cls, n: int, m: int) -> Biquadratic:
        return cls(n, m, (0,) * (len(index_pairs(n)) * len(index_pairs(m))))

    @classmethod
    def norm_product(cls, n: int, m: int) -> Biquadratic:
        """|x|^2 |y|^2."""
        return cls.from_dict(n, m, {((i, i), (j, j)): 1 for i in range(n) for j in range(m)})

    @classmethod
    def square(cls, M) -> Biquadratic:
        """<x, M y>^2 for a matrix M (rational entries stay exact)."""
        M = np.asarray(M, dtype=object)
        n, m = M.shape
        lin = Poly(n + m)
        for i in range(n):
            for j in range(m):
                if M[i, j] != 0:
                    lin = lin + Poly.var(i, n + m) * Poly.var(n + j, n + m) * Fraction(M[i, j])
        return cls.from_poly(lin * lin, n, m)

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check(other)
        return Biquadratic(self.n, self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return Biquadratic(self.n, self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Biquadratic(self.n, self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return Biquadratic(self.n, self.m, tuple(a * s for a in self.coeffs))

    __rmul__ = __mul__

    # views --------------------------------------------------------------
    def as_dict(self) -> dict:
        return {k: c for k, c in zip(biquadratic_monomials(self.n, self.m), self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def scale(self) -> float:
        """Largest coefficient magnitude (1 for the zero form)."""
        s = max((abs(float(c)) for c in self.coeffs), default=0.0)
        return s if s > 0 else 1.0

    @cached_property
    def poly(self) -> Poly:
        """F as a polynomial in (x_0..x_{n-1}, y_0..y_{m-1})."""
        N = self.n + self.m
        terms = {}
        for ((i, k), (j, l)), c in self.as_dict().items():
            e = [0] * N
            e[i] += 1
            e[k] += 1
            e[self.n + j] += 1
            e[self.n + l] += 1
            terms[tuple(e)] = c
        return Poly(N, terms)

    @cached_property
    def _gradient_polys(self):
        return self.poly.gradient_polys()

    @cached_property
    def _hessian_polys(self):
        return [[g.diff(j) for j in range(self.n + self.m)] for g in self._gradient_polys]

    def exact_tensor(self) -> np.ndarray:
        """Symmetric representative C[i, j, k, l] with F = sum x_i y_j C x_k y_l."""
        C = np.empty((self.n, self.m, self.n, self.m), dtype=object)
        C.fill(Fraction(0))
        for key, c in self.as_dict().items():
            (i, k), (j, l) = key
            val = c / _multiplicity(key)
            for a, b in {(i, k), (k, i)}:
                for p, q in {(j, l), (l, j)}:
                    C[a, p, b, q] = val
        return C

    @cached_property
    def float_tensor(self) -> np.ndarray:
        return self.exact_tensor().astype(float)

    def to_records(self) -> list[tuple[int, int, int, int, Fraction]]:
        """One (i, j, k, l, value) record per nonzero monomial."""
        return [(i, j, k, l, c) for ((i, k), (j, l)), c in self.as_dict().items()]

    def __str__(self):
        names = [f"x{i}" for i in range(self.n)] + [f"y{j}" for j in range(self.m)]
        return self.poly.to_string(names)


@dataclass(frozen=True, eq=False)
class MatrixQuadForm:
    n: int
    m: int
    C: np.ndarray = field(repr=False)

    def __post_init__(self):
        C = np.asarray(self.C, dtype=object)
        N = self.n * self.m
        if C.shape != (N, N):
            raise ValueError(f"coefficient matrix must be {N}x{N}")
        C = np.vectorize(Fraction, otypes=[object])(C) if C.size else C
        if any(C[a, b] != C[b, a] for a in range(N) for b in range(a + 1, N)):
            raise ValueError("coefficient matrix must be symmetric")
        C.setflags(write=False)
        object.__setattr__(self, "C", C)

    @classmethod
    def identity(cls, n: int, m: int) -> MatrixQuadForm:
        C = np.empty((n * m, n * m), dtype=object)
        for a in range(n * m):
            for b in range(n * m):
                C[a, b] = Fraction(int(a == b))
        return cls(n, m, C)

    @classmethod
    def minor(cls, n: int, m: int, rows, cols) -> MatrixQuadForm:
        """Z[i,j] Z[k,l] - Z[i,l] Z[k,j] for rows (i, k), cols (j, l)."""
        (i, k), (j, l) = rows, cols
        C = np.empty((n * m, n * m), dtype=object)
        C.fill(Fraction(0))
        half = Fraction(1, 2)
        a, b = i * m + j, k * m + l
        c, d = i * m + l, k * m + j
        C[a, b] = C[b, a] = half
        C[c, d] = C[d, c] = -half
        return cls(n, m, C)

    def __call__(self, Z):
        z = np.asarray(Z, dtype=object).reshape(self.n * self.m)
        return z.dot(self.C.dot(z))

    def __add__(self, other):
        return MatrixQuadForm(self.n, self.m, self.C + other.C)

    def __mul__(self, scalar):
        return MatrixQuadForm(self.n, self.m, self.C * Fraction(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MatrixQuadForm):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and bool(np.all(self.C == other.C))

    def matrix(self) -> np.ndarray:
        return self.C.copy()


def sigma(phi: MatrixQuadForm) -> Biquadratic:
    """Restriction to rank-one matrices: F(x, y) = phi(x y^T)."""
    n, m = phi.n, phi.m
    acc: dict = {}
    for a in range(n * m):
        i, j = divmod(a, m)
        for b in range(n * m):
            c = phi.C[a, b]
            if c == 0:
                continue
            k, l = divmod(b, m)
            key = (_pair(i, k), _pair(j, l))
            acc[key] = acc.get(key, 0) + c
    return Biquadratic.from_dict(n, m, acc)


def tau(F: Biquadratic) -> MatrixQuadForm:
    """Symmetric-representative right inverse of :func:`sigma`."""
    n, m = F.n, F.m
    T = F.exact_tensor()
    C = np.empty((n * m, n * m), dtype=object)
    for i in range(n):
        for j in range(m):
            for k in range(n):
                for l in range(m):
                    C[i * m + j, k * m + l] = T[i, j, k, l]
    return MatrixQuadForm(n, m, C)


def minors_basis(n: int, m: int) -> list[MatrixQuadForm]:
    if n < 2 or m < 2:
        return []
    return [
        MatrixQuadForm.minor(n, m, rows, cols)
        for rows in combinations(range(n), 2)
        for cols in combinations(range(m), 2)
    ]


def is_null_lagrangian(phi: MatrixQuadForm) -> bool:
    return sigma(phi).is_zero()


@dataclass(frozen=True, eq=False)
class QuadraticMatrixPencil:
    """Symmetric matrix whose entries are quadratic forms in ``nvars`` variables."""

    entries: tuple
    nvars: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def __post_init__(self):
        s = len(self.entries)
        for a in range(s):
            for b in range(s):
                if self.entries[a][b] != self.entries[b][a]:
                    raise ValueError("pencil must be symmetric")

    def __call__(self, x):
        vals = [[self.entries[a][b](list(x)) for b in range(self.size)] for a in range(self.size)]
        if all(isinstance(v, (int, Fraction)) for row in vals for v in row):
            return as_object_array([[Fraction(v) for v in row] for row in vals])
        return np.array(vals, dtype=float)

    def det(self) -> Poly:
        return _poly_det([list(r) for r in self.entries], self.nvars)

    def float_tensor(self) -> np.ndarray:
        """A[a, b, i, k] with entry (a, b) equal to x^T A[a, b] x."""
        s, n = self.size, self.nvars
        A = np.zeros((s, s, n, n))
        for a in range(s):
            for b in range(s):
                for e, c in self.entries[a][b].terms.items():
                    idx = [i for i in range(n) for _ in range(e[i])]
                    i, k = idx
                    if i == k:
                        A[a, b, i, i] += float(c)
                    else:
                        A[a, b, i, k] += float(c) / 2
                        A[a, b, k, i] += float(c) / 2
        return A

    def minors_vanish(self) -> bool:
        s = self.size
        E = self.entries
        for r1, r2 in combinations(range(s), 2):
            for c1, c2 in combinations(range(s), 2):
                if not (E[r1][c1] * E[r2][c2] - E[r1][c2] * E[r2][c1]).is_zero():
                    return False
        return True

    def equal_up_to_positive_scale(self, other: QuadraticMatrixPencil) -> Fraction | None:
        """The scale s > 0 with self == s * other, or None."""
        if (self.size, self.nvars) != (other.size, other.nvars):
            return None
        s = None
        for a in range(self.size):
            for b in range(self.size):
                p, q = self.entries[a][b], other.entries[a][b]
                if set(p.terms) != set(q.terms):
                    return None
                for e, c in p.terms.items():
                    r = Fraction(c) / Fraction(q.terms[e])
                    if s is None:
                        s = r
                    elif r != s:
                        return None
        if s is None or s <= 0:
            return None
        return s


def _poly_det(M, nvars: int) -> Poly:
    s = len(M)
    if s == 0:
        return Poly.const(Fraction(1), nvars)
    if s == 1:
        return M[0][0]
    if s == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = Poly(nvars)
    for c in range(s):
        if M[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in M[1:]]
        term = M[0][c] * _poly_det(minor, nvars)
        total = total + term if c % 2 == 0 else total - term
    return total


def _pencil(F: Biquadratic, side: str) -> QuadraticMatrixPencil:
    if side == "x":
        size, nvars = F.m, F.n
    else:
        size, nvars = F.n, F.m
    E = [[Poly(nvars) for _ in range(size)] for _ in range(size)]
    for ((i, k), (j, l)), c in F.as_dict().items():
        if side == "y":
            (i, k), (j, l) = (j, l), (i, k)
        # coefficient c multiplies x_i x_k y_j y_l; entry (j, l) collects it
        e = [0] * nvars
        e[i] += 1
        e[k] += 1
        term = Poly(nvars, {tuple(e): c})
        if j == l:
            E[j][j] = E[j][j] + term
        else:
            half = term * Fraction(1, 2)
            E[j][l] = E[j][l] + half
            E[l][j] = E[l][j] + half
    return QuadraticMatrixPencil(tuple(tuple(r) for r in E), nvars)


def x_matrix(F: Biquadratic) -> QuadraticMatrixPencil:
    """T(x), m x m, with F(x, y) = y^T T(x) y."""
    return _pencil(F, "x")


def y_matrix(F: Biquadratic) -> QuadraticMatrixPencil:
    """S(y), n x n, with F(x, y) = x^T S(y) x."""
    return _pencil(F, "y")


def _point(F: Biquadratic, x, y):
    if len(x) != F.n or len(y) != F.m:
        raise ValueError(f"expected x of length {F.n} and y of length {F.m}")
    return list(x) + list(y)


def evaluate(F: Biquadratic, x, y):
    return F.poly(_point(F, x, y))


def gradient(F: Biquadratic, x, y) -> np.ndarray:
    z = _point(F, x, y)
    return _out_array(g(z) for g in F._gradient_polys)


def hessian(F: Biquadratic, x, y) -> np.ndarray:
    z = _point(F, x, y)
    rows = [[h(z) for h in row] for row in F._hessian_polys]
    flat = [v for row in rows for v in row]
    if all(isinstance(v, (int, Fraction)) for v in flat):
        return as_object_array(rows)
    return np.array(rows, dtype=float)


def is_perfect_square_biquadratic(F: Biquadratic):
    """Matrix M with F = <x, M y>^2, or None.

    M is exact (Fractions) when the square root is rational and a float array
    otherwise; the squareness decision itself is always exact.
    """
    if F.is_zero():
        return np.zeros((F.n, F.m), dtype=object) + Fraction(0)
    if not y_matrix(F).minors_vanish():
        return None
    p = F.poly
    lc = p.leading_term()[1]
    if lc <= 0:
        return None
    g = sqrt_poly(p / lc)
    if g is None:
        return None
    N = np.empty((F.n, F.m), dtype=object)
    N.fill(Fraction(0))
    for e, c in g.terms.items():
        i = next(a for a in range(F.n) if e[a])
        j = next(b for b in range(F.m) if e[F.n + b])
        N[i, j] = Fraction(c)
    r = fraction_sqrt(lc)
    if r is not None:
        return N * r
    return N.astype(float) * float(lc) ** 0.5


# zero data ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ZeroDatum:
    """A projective zero (x, y) of F with its Hessian and kernel pairs.

    Exact-grade data keep rational representatives (not unit vectors);
    numeric-grade data are normalized to |x| = |y| = 1.
    """

    x: tuple
    y: tuple
    value: object
    gradient: np.ndarray
    hessian: np.ndarray
    kernel: tuple
    grade: str

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def make_zero_datum(F: Biquadratic, x, y, exact: bool | None = None,
                    tol: Tolerances = DEFAULT_TOL) -> ZeroDatum:
    if exact is None:
        exact = all(isinstance(v, (int, Fraction)) for v in list(x) + list(y))
    if exact:
        xs, ys = _exact_vector(x), _exact_vector(y)
        H = hessian(F, xs, ys)
        basis = exact_nullspace(H.tolist())
        vecs = [np.array(v, dtype=object) for v in basis]
        value = evaluate(F, xs, ys)
        grad = gradient(F, xs, ys)
        grade = "exact"
    else:
        xf = np.asarray(x, dtype=float)
        yf = np.asarray(y, dtype=float)
        xf, yf = xf / np.linalg.norm(xf), yf / np.linalg.norm(yf)
        xs, ys = tuple(xf), tuple(yf)
        H = hessian(F, [float(v) for v in xs], [float(v) for v in ys])
        vecs = kernel_basis(H, tol)
        value = float(evaluate(F, list(xs), list(ys)))
        grad = gradient(F, list(xs), list(ys))
        grade = "numeric"
    kernel = tuple((v[: F.n], v[F.n:]) for v in vecs)
    return ZeroDatum(xs, ys, value, grad, H, kernel, grade)
