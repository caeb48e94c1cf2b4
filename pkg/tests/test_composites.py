from fractions import Fraction as Fr

import numpy as np
import pytest

from biquad.composites import (InvalidTranslationError, TwoPhase, arithmetic_mean_bound, check_translation,
                               harmonic_mean_bound, loewner_leq, minor_translation, translation_bound)
from biquad.forms import is_null_lagrangian
from biquad.composites import translation_form

half = Fr(1, 2)


def spd(rng, N):
    A = rng.normal(size=(N, N))
    return A @ A.T + 0.5 * np.eye(N)


def exact_eye(N, c=1):
    return np.eye(N, dtype=int).astype(object) * Fr(c)


def test_two_phase_validation():
    with pytest.raises(ValueError):
        TwoPhase(exact_eye(4), exact_eye(4), half, Fr(1, 3))
    with pytest.raises(ValueError):
        TwoPhase(exact_eye(4), exact_eye(9), half, half)
    with pytest.raises(ValueError):
        TwoPhase(exact_eye(3), exact_eye(3), half, half)  # 3 is not n^2
    with pytest.raises(ValueError):
        TwoPhase(exact_eye(1), exact_eye(1), Fr(3, 2), Fr(-1, 2))


def test_scalar_bounds():
    tp = TwoPhase.scalar(1, 2, half)
    assert arithmetic_mean_bound(tp)[0, 0] == Fr(3, 2)
    assert harmonic_mean_bound(tp)[0, 0] == Fr(4, 3)
    assert translation_bound(tp, 0)[0, 0] == Fr(4, 3)
    assert translation_bound(tp, [[half]])[0, 0] == Fr(5, 4)


def test_equal_phases_and_pure_phase():
    rng = np.random.default_rng(0)
    C = spd(rng, 4)
    tp = TwoPhase(C, C, 0.3, 0.7)
    assert np.allclose(arithmetic_mean_bound(tp), C)
    assert np.allclose(harmonic_mean_bound(tp), C)
    T = 0.1 * np.eye(4)
    assert np.allclose(translation_bound(tp, T), C)
    tp1 = TwoPhase(C, 2 * C, 1.0, 0.0)
    assert np.allclose(arithmetic_mean_bound(tp1), C)


def test_harmonic_requires_positive_definite_phases():
    with pytest.raises(ValueError):
        harmonic_mean_bound(TwoPhase(np.diag([1.0, 0.0, 1.0, 1.0]), np.eye(4), 0.5, 0.5))


def test_translation_zero_equals_harmonic_exactly():
    C1 = np.array([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 3, 1], [0, 0, 1, 1]], dtype=object)
    C2 = C1 + exact_eye(4, 2)
    tp = TwoPhase(C1, C2, Fr(1, 4), Fr(3, 4))
    assert np.all(translation_bound(tp, 0) == harmonic_mean_bound(tp))


def test_translation_checks():
    C1 = exact_eye(9)
    tp = TwoPhase(C1, exact_eye(9, 2), half, half)
    assert check_translation(tp, 0).valid
    bad = check_translation(tp, 2 * C1)
    assert not bad.phases_pd and not bad.valid
    with pytest.raises(InvalidTranslationError):
        translation_bound(tp, 2 * C1)
    T = minor_translation(3, [Fr(1, 10)] + [0] * 8)
    assert is_null_lagrangian(translation_form(T))
    rep = check_translation(tp, T)
    assert rep.valid and rep.quasiconvex_min == 0 and rep.quasiconvex_grade == "exact"


def test_non_quasiconvex_translation_fails():
    tp = TwoPhase(exact_eye(4, 3), exact_eye(4, 4), half, half)
    T = exact_eye(4) * 0
    T[0, 0] = Fr(-1)  # -Z11^2 is negative on rank-one matrices
    rep = check_translation(tp, T)
    assert rep.phases_pd and not rep.quasiconvex and rep.quasiconvex_grade == "numeric"


def test_near_singular_gap_warns():
    tp = TwoPhase(np.eye(4), 2 * np.eye(4), 0.5, 0.5)
    rep = check_translation(tp, (1 - 1e-7) * np.eye(4))
    assert rep.phases_pd and any("near_singular" in w for w in rep.warnings)


def test_loewner_examples():
    A = np.diag([2.0, 1.0])
    B = np.diag([1.0, 2.0])
    assert loewner_leq(A, A)
    assert not loewner_leq(A, B) and not loewner_leq(B, A)
    with pytest.raises(ValueError):
        loewner_leq(np.eye(2), np.eye(3))


def test_random_instances_order_and_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(1, 3))
        N = n * n
        tp = TwoPhase(spd(rng, N), spd(rng, N), *(lambda t: (t, 1 - t))(float(rng.uniform())))
        AM, HM = arithmetic_mean_bound(tp), harmonic_mean_bound(tp)
        assert loewner_leq(HM, AM)
        lam = min(np.linalg.eigvalsh(tp.C1).min(), np.linalg.eigvalsh(tp.C2).min())
        T = 0.5 * lam * np.eye(N)
        TB = translation_bound(tp, T)
        for M in (AM, HM, TB):
            assert np.allclose(M, M.T)
        assert np.linalg.eigvalsh(TB - T).min() > 0


def test_scalar_translation_bound_is_nonincreasing():
    tp = TwoPhase(np.array([[1.0]]), np.array([[2.0]]), 0.5, 0.5)
    ts = np.linspace(0, 0.99, 60)
    vals = [translation_bound(tp, [[t]])[0, 0] for t in ts]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
