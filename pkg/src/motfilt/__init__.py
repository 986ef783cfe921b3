"""Exact integral invariants around the motivic filtration of THH and TC.

Finitely generated abelian groups, strictly perfect complexes over Z,
monogenic number rings, Hodge-truncated derived de Rham data, correcting
factors and zeta functions of curves over finite fields.
"""

from .derham import fp_lomega_euler, koszul_complex, lambda_power, lomega_rank, lomega_summary, lomega_two_term
from .filtration import (
    THEORIES,
    GradedPiece,
    c_infinity,
    graded_piece,
    milne_exponent,
    thh_of_homotopy,
    thh_z_homotopy,
    verify_cinf_fiber_seq,
)
from .hodge import OVER_FQ, OVER_Q, HodgeDiamond
from .homalg import (
    FinAbGroup,
    IntMatrix,
    ZComplex,
    cokernel,
    derived_mod,
    euler_mult,
    euler_rank,
    lemma_multadd_check,
    mapping_cone,
    smith_normal_form,
)
from .numring import NumberRing, different_norm, fractional_index, make_ring, quotient_group
from .zeta import (
    CurveZeta,
    bloch_conductor_fq,
    curve_from_model,
    curve_zeta,
    gamma_r_leading,
    special_value,
    verify_thm_fe,
)

__all__ = [
    "CurveZeta", "FinAbGroup", "GradedPiece", "HodgeDiamond", "IntMatrix", "NumberRing",
    "OVER_FQ", "OVER_Q", "THEORIES", "ZComplex",
    "bloch_conductor_fq", "c_infinity", "cokernel", "curve_from_model", "curve_zeta",
    "derived_mod", "different_norm", "euler_mult", "euler_rank", "fp_lomega_euler",
    "fractional_index", "gamma_r_leading", "graded_piece", "koszul_complex", "lambda_power",
    "lemma_multadd_check", "lomega_rank", "lomega_summary", "lomega_two_term", "make_ring",
    "mapping_cone", "milne_exponent", "quotient_group", "smith_normal_form", "special_value",
    "thh_of_homotopy", "thh_z_homotopy", "verify_cinf_fiber_seq", "verify_thm_fe",
]
