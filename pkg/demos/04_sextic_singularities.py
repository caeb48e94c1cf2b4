# A1 / A3 / A5 double points of nonnegative ternary sextics.
import numpy as np
from fractions import Fraction

from biquad import classify_singularity, decide_sextic_extremality, sextic_zero_search
from biquad.poly import Poly

x, y, z = (Poly.var(i, 3) for i in range(3))

for name, f in [("z^4(x^2+y^2)", z**4 * (x**2 + y**2)),
                ("z^4x^2 + z^2y^4", z**4 * x**2 + z**2 * y**4),
                ("z^4x^2 + y^6", z**4 * x**2 + y**6)]:
    r = classify_singularity(f, (0, 0, 1))
    print(f"{name:18s} at (0:0:1): rank {r.hessian_rank}  {r.type}  delta {r.delta}")

# the type survives a change of coordinates
A = [[1, 2, 0], [0, 1, -1], [1, 0, 1]]
g = (z**4 * x**2 + y**6).linear_change(A)
Ainv = np.linalg.inv(np.array(A, dtype=float))
P = tuple(Fraction(c).limit_denominator(100) for c in Ainv @ [0, 0, 1])
print("after a linear change:", classify_singularity(g, P).type, "at", [str(c) for c in P])

# a full run: find the zeros, classify, decide
f = z**4 * x**2 + y**6
search = sextic_zero_search(f)
reports = [classify_singularity(f, p) for p in search.zeros]
for r in reports:
    print("  zero", [str(c) for c in r.point], r.type, r.note)
print(decide_sextic_extremality(f, reports, search.evidence).as_dict())
