"""Exact arithmetic for Chern Frobenius lifts on GL_n and the curvature of their
algebraic correspondence structures."""

from .chern import (beta_p, build_antisym_gl2, build_canonical, build_sym_gl2, char_disc,
                    fprime_identity_check, g_p, general_cp_presentation, jerry_disc_check, jor,
                    matrix_fp, split_q, uvw)
from .curvature import (CurvatureReport, curvature, one_one_curvature, partial_induction_check,
                        verify_claim5, verify_nonvanishing_11)
from .errors import (AlgebraMismatchError, ArithCurvError, ExprParseError, NotInvertibleError,
                     PrecisionError, TermLimitError)
from .padic import PadicElem, Precision, chern_frobenius, gl1_chern, verify_chern_diagram
from .quotalg import (AlgElem, Correspondence, QuotAlgebra, alg_inverse, compose_correspondences,
                      gamma_star, mult_matrix, phi_apply, psi_partial_commute_check, trace_pi)
from .ratfunc import RatFunc, frobenius_subst, iota, iota_split, subst
from .scalars import ExactScalar, fermat_quotient, legendre_symbol

__version__ = "0.1.0"
