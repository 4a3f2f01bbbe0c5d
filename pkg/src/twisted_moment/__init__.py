"""Numerical verification of a reciprocity relation for the twisted second moment of zeta."""

from .characters import (CharacterFamily, DirichletCharacter, cosine_twisted_sum,
                         enumerate_characters, gauss_sum, modular_inverse,
                         orthogonality_residual)
from .lfunctions import (dirichlet_fe_residual, dirichlet_l, hurwitz_zeta, riemann_zeta,
                         zeta_fe_residual)
from .moments import (CorollaryReport, MomentReport, ReciprocityInstance, dual_moment,
                      lhs_moment, main_term, verify_corollary, verify_theorem)
from .numerics import (DEFAULT_PLAN, QuadraturePlan, complex_gamma, compensated_sum,
                       digamma, gaussian_window_transform,
                       gaussian_window_transform_weighted, integrate_panels)

__version__ = "0.1.0"

__all__ = [
    "CharacterFamily", "DirichletCharacter", "cosine_twisted_sum", "enumerate_characters",
    "gauss_sum", "modular_inverse", "orthogonality_residual",
    "dirichlet_fe_residual", "dirichlet_l", "hurwitz_zeta", "riemann_zeta", "zeta_fe_residual",
    "CorollaryReport", "MomentReport", "ReciprocityInstance", "dual_moment", "lhs_moment",
    "main_term", "verify_corollary", "verify_theorem",
    "DEFAULT_PLAN", "QuadraturePlan", "complex_gamma", "compensated_sum", "digamma",
    "gaussian_window_transform", "gaussian_window_transform_weighted", "integrate_panels",
]
