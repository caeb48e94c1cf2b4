# Quadratic forms on 3x3 matrices and their restriction to rank-one matrices.
import numpy as np
from fractions import Fraction

from biquad import Biquadratic, MatrixQuadForm, minors_basis, sigma, tau, x_matrix, y_matrix

# Phi(Z) = |Z|^2 restricts to |x|^2 |y|^2 on Z = x y^T
phi = MatrixQuadForm.identity(3, 3)
F = sigma(phi)
print("sigma(|Z|^2) =", F)

# the nine 2x2 minors vanish on rank-one matrices, and are independent
minors = minors_basis(3, 3)
print("minors restricted:", [sigma(m).is_zero() for m in minors])
print("rank of minors:", np.linalg.matrix_rank(np.array([m.C.ravel() for m in minors], dtype=float)))

# adding a null Lagrangian changes Phi but not F; tau picks the symmetric representative
psi = phi + minors[0] * Fraction(3, 2)
print("sigma(psi) == F:", sigma(psi) == F, "  tau(F) == phi:", tau(F) == phi)

# the acoustic (x-)matrix and the y-matrix of a random integer form
rng = np.random.default_rng(0)
G = Biquadratic(3, 3, tuple(int(c) for c in rng.integers(-3, 4, size=36)))
x, y = [1, 2, -1], [Fraction(1, 2), 0, 3]
T, S = x_matrix(G)(x), y_matrix(G)(y)
print("y^T T(x) y =", np.array(y, dtype=object).dot(T.dot(np.array(y, dtype=object))),
      " x^T S(y) x =", np.array(x, dtype=object).dot(S.dot(np.array(x, dtype=object))))
