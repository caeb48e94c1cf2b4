"""Certification tools for nonnegative biquadratic forms and quasiconvex quadratic forms on matrices."""
from .composites import (TwoPhase, arithmetic_mean_bound, check_translation, harmonic_mean_bound, loewner_leq,
                         minor_translation, translation_bound)
from .extremality import (decide_strong_extremal_3x3, decide_weak_extremal, distinct_projection_check, lf_space,
                          orthogonal_complement)
from .family import bs_form, bs_validity, bs_zero_set, interpolate_biquadratic, reference_x_matrix
from .forms import (Biquadratic, MatrixQuadForm, QuadraticMatrixPencil, ZeroDatum, evaluate, gradient, hessian,
                    is_null_lagrangian, is_perfect_square_biquadratic, make_zero_datum, minors_basis, sigma, tau,
                    x_matrix, y_matrix)
from .linalg import DEFAULT_TOL, Tolerances
from .numerics import (NotDominatedError, NotNonnegativeError, domination_alpha, find_zeros, min_on_spheres,
                       sextic_zero_search, zero_search)
from .poly import Poly
from .sextics import (SingularityReport, TernarySextic, classify_singularity, decide_sextic_extremality, delta_sum,
                      det_x_matrix, hessian_rank_at, is_perfect_square_sextic)

__version__ = "0.1.0"
