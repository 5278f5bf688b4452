"""Exact big-cell machinery for GL(n), SL(n) and Sp(2n) over Q_p and its
totally ramified extensions Q_p[t]/(t^e - p)."""

from .exactfield import INF, BitLengthExceeded, ExactScalar, bit_guard, parse_scalar
from .groups import GroupElement, ParabolicDatum, adjoint_matrix, build_parabolic, iwasawa_factor, weyl_constant
from .cell import (
    BigCellFactorization,
    NotInBigCell,
    big_cell_factor,
    f_closed_form,
    f_minor,
    verify_lemma_f,
)
from .symmspace import (
    automorphy_factor,
    covering_constants,
    enumerate_reps,
    f_pair,
    in_omega_m,
    omega_falsify,
    star_action,
    sup_norm,
    translate_bound,
)
from .reps import RationalRep, phi_function, pi_action, psi_function, t_action
from .duality import EvaluationFunctional, FiniteDistribution, I_sigma, J_sigma, verify_equivariance

__all__ = [
    "INF", "BitLengthExceeded", "ExactScalar", "bit_guard", "parse_scalar",
    "GroupElement", "ParabolicDatum", "adjoint_matrix", "build_parabolic", "iwasawa_factor", "weyl_constant",
    "BigCellFactorization", "NotInBigCell", "big_cell_factor", "f_closed_form", "f_minor", "verify_lemma_f",
    "automorphy_factor", "covering_constants", "enumerate_reps", "f_pair", "in_omega_m", "omega_falsify",
    "star_action", "sup_norm", "translate_bound",
    "RationalRep", "phi_function", "pi_action", "psi_function", "t_action",
    "EvaluationFunctional", "FiniteDistribution", "I_sigma", "J_sigma", "verify_equivariance",
]
