# The nine-zero family: exact interpolation, extremality, and the acoustic determinant.
import time
from fractions import Fraction

from biquad import (bs_form, bs_validity, bs_zero_set, classify_singularity, decide_sextic_extremality,
                    decide_strong_extremal_3x3, det_x_matrix, hessian_rank_at, reference_x_matrix,
                    sextic_zero_search, x_matrix)
from biquad.linalg import DEFAULT_TOL
from dataclasses import replace

p, q = Fraction(1, 2), Fraction(3, 4)
print("valid parameters:", bs_validity(p, q))

t0 = time.perf_counter()
F = bs_form(p, q)
print("F =", F)
print("T(x) matches the reference matrix up to scale:",
      x_matrix(F).equal_up_to_positive_scale(reference_x_matrix()))

strong = decide_strong_extremal_3x3(F)
print("extremality:", strong.status, " dim L_F =", strong.weak.dim)

f = det_x_matrix(F)
xs = [x for x, _ in bs_zero_set(p, q)]
reports = [classify_singularity(f, x) for x in xs]
for x, r in zip(xs, reports):
    print(f"  det T at {tuple(str(c) for c in x)}: Hessian rank {hessian_rank_at(f, x)}, {r.type}")

ev = sextic_zero_search(f, replace(DEFAULT_TOL, grid_density=100_000), known=xs).evidence
print("tenth zero search:", ev.as_dict())
print("det T(x):", decide_sextic_extremality(f, reports, ev).as_dict())
print(f"{time.perf_counter() - t0:.2f} s")

# the family away from (1/2, 3/4)
for p2, q2 in [(Fraction(2, 5), Fraction(1, 2)), (Fraction(3, 5), Fraction(2, 3))]:
    if bs_validity(p2, q2):
        G = bs_form(p2, q2)
        print((str(p2), str(q2)), decide_strong_extremal_3x3(G).status)
    else:
        print((str(p2), str(q2)), "outside the validity region")
