from fractions import Fraction as Fr

import numpy as np
import pytest

from biquad.extremality import (decide_strong_extremal_3x3, decide_weak_extremal, distinct_projection_check,
                                kernel_dimension_diagnostics, lf_space, orthogonal_complement)
from biquad.forms import Biquadratic, make_zero_datum
from biquad.linalg import DEFAULT_TOL, exact_inverse
from biquad.numerics import min_on_spheres, zero_search
from biquad.poly import Poly

V = [Poly.var(i, 6) for i in range(6)]

pytestmark = pytest.mark.filterwarnings("ignore:zeros .* share")


def bq(p, n=3, m=3):
    return Biquadratic.from_poly(p, n, m)


def e(i):
    return tuple(Fr(int(i == j)) for j in range(3))


def test_no_zeros_gives_dim_zero():
    F = Biquadratic.norm_product(3, 3)
    assert lf_space(F, []).dim == 0


def test_single_zero_with_minimal_kernel():
    F = Biquadratic.norm_product(3, 3) - bq((V[0] * V[3]) ** 2)
    z = make_zero_datum(F, e(0), e(0))
    assert z.kernel_dim == 2
    lf = lf_space(F, [z])
    assert lf.dim == 1
    B = np.asarray(lf.basis[0], dtype=object)
    assert B[0, 0] != 0 and sum(1 for v in B.flat if v != 0) == 1


def test_family_is_weak_extremal(family_form):
    v = decide_weak_extremal(family_form)
    assert v.status == "weak_extremal" and v.dim == 9 and v.grade == "exact"
    assert v.notes == []


def test_zero_tangent_xy_lies_in_lf(family_form):
    search = zero_search(family_form)
    lf = lf_space(family_form, search.zeros)
    for z in search.zeros:
        assert lf.contains(np.outer(np.array(z.x, dtype=object), np.array(z.y, dtype=object)))


def test_perfect_square_witness():
    F = bq((V[0] * V[3]) ** 2)
    v = decide_weak_extremal(F)
    assert v.status == "not_weak_extremal"
    M = np.asarray(v.witness_M, dtype=float)
    assert np.allclose(np.abs(M), np.eye(3)[:, :1] @ np.eye(3)[:1, :])
    assert v.witness_alpha == 1


def test_norm_product_witness_passes_self_check():
    F = Biquadratic.norm_product(3, 3)
    v = decide_weak_extremal(F)
    assert v.status == "not_weak_extremal" and v.dim == 0
    M = np.vectorize(Fr, otypes=[object])(v.witness_M)
    G = F - Biquadratic.square(M) * v.witness_alpha
    assert min_on_spheres(G).value >= -DEFAULT_TOL.zero_tol * F.scale()
    assert v.witness_alpha > 0


def test_witness_is_orthogonal_to_lf():
    F = bq((V[0] * V[3]) ** 2 + (V[1] * V[4]) ** 2)
    v = decide_weak_extremal(F)
    assert v.status == "not_weak_extremal"
    M = np.asarray(v.witness_M, dtype=float)
    for B in v.lf.basis:
        assert abs(np.sum(M * np.asarray(B, dtype=float))) < 1e-8


def test_lf_dimension_is_invariant(family_form):
    base = zero_search(family_form).zeros
    # positive rescaling
    assert lf_space(family_form * 7, [make_zero_datum(family_form * 7, z.x, z.y) for z in base]).dim == 9
    # swapping the roles of x and y
    swapped = family_form.poly.compose(V[3:] + V[:3])
    G = bq(swapped)
    assert lf_space(G, [make_zero_datum(G, z.y, z.x) for z in base]).dim == 9
    # unimodular changes of x and of y keep rational zeros rational
    A = [[1, 1, 0], [0, 1, 2], [0, 0, 1]]
    B = [[1, 0, 0], [3, 1, 0], [-1, 1, 1]]
    block = [[0] * 6 for _ in range(6)]
    for i in range(3):
        for k in range(3):
            block[i][k] = A[i][k]
            block[3 + i][3 + k] = B[i][k]
    H = bq(family_form.poly.linear_change(block))
    Ai, Bi = exact_inverse(A), exact_inverse(B)
    zs = [make_zero_datum(H, tuple(Ai.dot(np.array(z.x, dtype=object))), tuple(Bi.dot(np.array(z.y, dtype=object))))
          for z in base]
    assert all(z.value == 0 for z in zs)
    assert lf_space(H, zs).dim == 9


def test_orthogonal_complement_dimension(family_form):
    lf = lf_space(Biquadratic.norm_product(3, 3), [])
    assert len(orthogonal_complement(lf)) == 9


def test_strong_extremality_verdicts(family_form):
    assert decide_strong_extremal_3x3(family_form).status == "strong_extremal"
    M = np.array([[1, 2, 0], [0, 1, -1], [3, 0, 1]], dtype=object)
    assert decide_strong_extremal_3x3(Biquadratic.square(M)).status == "square_not_decided"
    assert decide_strong_extremal_3x3(Biquadratic.norm_product(3, 3)).status == "not_strong_extremal"
    with pytest.raises(ValueError):
        decide_strong_extremal_3x3(Biquadratic.norm_product(2, 3))


def test_negative_form_is_rejected():
    F = Biquadratic.norm_product(3, 3) - bq((V[0] * V[3]) ** 2) * 2
    with pytest.raises(ValueError):
        decide_weak_extremal(F)


def test_distinct_projection_check(family_form, family_zeros):
    zs = [make_zero_datum(family_form, x, y) for x, y in family_zeros]
    assert distinct_projection_check(zs) == []
    F = bq((V[2] * V[5]) ** 2 + (V[1] * V[5]) ** 2)  # vanishes whenever y = e1 or e2 ...
    pair = [make_zero_datum(F, e(0), e(0)), make_zero_datum(F, e(0), e(1))]
    assert len(distinct_projection_check(pair)) == 1
    # an SOS of two squares with two common zeros sharing an x-projection
    G = Biquadratic.square(np.array([[0, 0, 0], [0, 1, 0], [0, 0, 0]], dtype=object)) + \
        Biquadratic.square(np.array([[0, 0, 0], [0, 0, 0], [0, 0, 1]], dtype=object))
    zs = [make_zero_datum(G, e(0), e(1)), make_zero_datum(G, e(0), e(2))]
    assert all(z.value == 0 for z in zs)
    assert distinct_projection_check(zs)


def test_kernel_dimension_diagnostic():
    F = bq((V[0] * V[3]) ** 2)
    z = make_zero_datum(F, e(1), e(1))
    assert z.kernel_dim > 4
    assert kernel_dimension_diagnostics([z])
