# Mean and translation bounds for a two-phase composite.
import numpy as np
from fractions import Fraction

from biquad import (TwoPhase, arithmetic_mean_bound, check_translation, harmonic_mean_bound, loewner_leq,
                    minor_translation, translation_bound)

tp = TwoPhase.scalar(1, 2, Fraction(1, 2))
print("scalar: AM", arithmetic_mean_bound(tp)[0, 0], " HM", harmonic_mean_bound(tp)[0, 0])
for t in [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]:
    print(f"  TB(t={t}) =", translation_bound(tp, [[t]])[0, 0])

# 2x2 matrices: isotropic-ish phases, translations along the determinant
rng = np.random.default_rng(1)
A = rng.normal(size=(4, 4))
C1 = A @ A.T + np.eye(4)
C2 = 3 * C1
tp2 = TwoPhase(C1, C2, 0.4, 0.6)
HM, AM = harmonic_mean_bound(tp2), arithmetic_mean_bound(tp2)
print("HM <= AM:", loewner_leq(HM, AM))
for s in [0.0, 0.2, 0.4]:
    T = minor_translation(2, [s]).astype(float)
    rep = check_translation(tp2, T)
    if rep.valid:
        TB = translation_bound(tp2, T, check=False)
        print(f"  det translation s={s}: quasiconvex [{rep.quasiconvex_grade}],"
              f" HM<=TB {loewner_leq(HM, TB)}, trace TB {np.trace(TB):.4f}")

# adding a convex (positive semidefinite) term to the translation: compare the bounds
T0 = minor_translation(2, [0.2]).astype(float)
S = 0.05 * np.eye(4)
B0 = translation_bound(tp2, T0)
B1 = translation_bound(tp2, T0 + S)
print("bound with T+S below bound with T:", loewner_leq(B1, B0),
      " above:", loewner_leq(B0, B1), " (reported, not asserted)")
