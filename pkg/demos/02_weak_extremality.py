# Weak extremality from zero data: dim L_F = n*m, else a square can be peeled off.
import warnings

import numpy as np

from biquad import Biquadratic, decide_weak_extremal
from biquad.poly import Poly

x0, x1, x2, y0, y1, y2 = (Poly.var(i, 6) for i in range(6))

examples = {
    "|x|^2|y|^2": Biquadratic.norm_product(3, 3),
    "(x0 y0)^2": Biquadratic.from_poly((x0 * y0) ** 2, 3, 3),
    "(x0y1 - x1y0)^2 + (x2y2)^2": Biquadratic.from_poly((x0 * y1 - x1 * y0) ** 2 + (x2 * y2) ** 2, 3, 3),
}

# the last two are sums of squares with infinitely many zeros; the search samples them
warnings.simplefilter("ignore")

for name, F in examples.items():
    v = decide_weak_extremal(F)
    print(f"{name:28s} zeros found={v.evidence.n_zeros}  dim L_F={v.dim}  {v.status}")
    if v.witness_alpha is not None:
        M = np.asarray(v.witness_M, dtype=float).round(3)
        print("   peel off", v.witness_alpha, "* <x, M y>^2 with M =", M.tolist())
