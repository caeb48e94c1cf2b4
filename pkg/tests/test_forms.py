from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biquad.forms import (Biquadratic, MatrixQuadForm, evaluate, gradient, hessian, is_null_lagrangian,
                          is_perfect_square_biquadratic, make_zero_datum, minors_basis, sigma, tau, x_matrix,
                          y_matrix)
from biquad.linalg import exact_rank

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def biquadratics(draw, n=None, m=None):
    n = n or draw(st.integers(1, 3))
    m = m or draw(st.integers(1, 3))
    k = len(Biquadratic.zero(n, m).coeffs)
    return Biquadratic(n, m, tuple(draw(st.lists(small, min_size=k, max_size=k))))


vec3 = st.lists(small, min_size=3, max_size=3)


def e(i, n=3):
    return tuple(Fr(int(i == j)) for j in range(n))


def test_sigma_of_identity_is_norm_product():
    assert sigma(MatrixQuadForm.identity(3, 3)) == Biquadratic.norm_product(3, 3)


def test_minors_are_null_lagrangians():
    for phi in minors_basis(3, 3):
        assert is_null_lagrangian(phi)
    assert len(minors_basis(2, 2)) == 1
    assert minors_basis(1, 3) == []
    assert exact_rank([list(phi.C.ravel()) for phi in minors_basis(3, 3)]) == 9


def test_null_lagrangian_detection_is_exact():
    phi = minors_basis(3, 3)[0]
    C = np.zeros((9, 9), dtype=object) + Fr(0)
    C[0, 0] = Fr(1, 10**9)
    assert not is_null_lagrangian(phi + MatrixQuadForm(3, 3, C))
    assert not is_null_lagrangian(MatrixQuadForm.identity(3, 3))


def test_sigma_evaluates_on_rank_one_points():
    rng = np.random.default_rng(1)
    A = rng.integers(-5, 6, size=(6, 6))
    phi = MatrixQuadForm(2, 3, np.array((A + A.T).tolist(), dtype=object))
    F = sigma(phi)
    for _ in range(50):
        xv = [Fr(int(v), 3) for v in rng.integers(-6, 7, size=2)]
        yv = [Fr(int(v), 2) for v in rng.integers(-6, 7, size=3)]
        Z = np.outer(np.array(xv, dtype=object), np.array(yv, dtype=object))
        assert evaluate(F, xv, yv) == phi(Z)


def test_tau_of_zero_is_zero():
    assert tau(Biquadratic.zero(3, 3)) == MatrixQuadForm(3, 3, np.zeros((9, 9), dtype=int))


@settings(max_examples=60, deadline=None)
@given(biquadratics())
def test_sigma_tau_round_trip(F):
    assert sigma(tau(F)) == F


@settings(max_examples=40, deadline=None)
@given(biquadratics(3, 3), vec3, vec3)
def test_pencils_reproduce_the_form(F, xv, yv):
    X = np.array(xv, dtype=object)
    Y = np.array(yv, dtype=object)
    v = evaluate(F, xv, yv)
    assert Y.dot(x_matrix(F)(xv).dot(Y)) == v
    assert X.dot(y_matrix(F)(yv).dot(X)) == v


@settings(max_examples=40, deadline=None)
@given(biquadratics(3, 3), vec3, vec3, small, small)
def test_bihomogeneity(F, xv, yv, lam, mu):
    lhs = evaluate(F, [lam * c for c in xv], [mu * c for c in yv])
    assert lhs == lam**2 * mu**2 * evaluate(F, xv, yv)


def test_norm_product_pencil_and_derivatives():
    F = Biquadratic.norm_product(3, 3)
    T = x_matrix(F)
    xv = [Fr(1), Fr(2), Fr(-1)]
    assert np.all(T(xv) == np.eye(3, dtype=int).astype(object) * 6)
    x0 = y0 = [1, 0, 0]
    assert evaluate(F, x0, y0) == 1
    assert list(gradient(F, x0, y0)) == [2, 0, 0, 2, 0, 0]
    H = hessian(F, x0, y0)
    assert H.shape == (6, 6) and np.all(H == H.T)


def test_dimension_mismatch():
    F = Biquadratic.norm_product(3, 3)
    with pytest.raises(ValueError):
        evaluate(F, [1, 0], [1, 0, 0])
    with pytest.raises(ValueError):
        gradient(F, [1, 0, 0], [1])


def test_zero_of_nonnegative_form_has_euler_kernel(family_form, family_zeros):
    for xv, yv in family_zeros:
        z = make_zero_datum(family_form, xv, yv)
        assert z.grade == "exact" and z.value == 0
        assert all(g == 0 for g in z.gradient)
        H = z.hessian
        xy0 = np.array(list(xv) + [0, 0, 0], dtype=object)
        x0y = np.array([0, 0, 0] + list(yv), dtype=object)
        assert all(c == 0 for c in H.dot(xy0)) and all(c == 0 for c in H.dot(x0y))
        assert z.kernel_dim >= 2


def test_perfect_square_detection(family_form):
    M = np.zeros((3, 3), dtype=object) + Fr(0)
    M[0, 0] = M[1, 1] = Fr(1)
    R = is_perfect_square_biquadratic(Biquadratic.square(M))
    assert R is not None and (np.all(R == M) or np.all(R == -M))
    assert is_perfect_square_biquadratic(family_form) is None
    assert is_perfect_square_biquadratic(Biquadratic.norm_product(3, 3)) is None
    R2 = is_perfect_square_biquadratic(Biquadratic.square(M) * 2)
    assert np.allclose(np.abs(np.asarray(R2, dtype=float)), np.sqrt(2) * np.abs(M.astype(float)))


def test_degenerate_dimensions_are_accepted():
    F = Biquadratic.norm_product(1, 3)
    assert sigma(tau(F)) == F
    assert evaluate(F, [2], [1, 1, 0]) == 8
