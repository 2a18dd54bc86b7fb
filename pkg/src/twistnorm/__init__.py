"""Twisted Alexander polynomials, their norms, and Thurston-norm bounds.

Exact computations over Q and prime fields, starting from PD codes or
finite presentations.
"""

from .fields import GF, QQ, Field
from .laurent import LaurentPoly, laurent_canonical, poly_gcd, specialize
from .matrices import PolyMatrix, minor_gcd, poly_det
from .smith import smith_normal_form
from .groups import (AbelianizationMap, FreeWord, GroupPresentation, abelianization, fox_derivative,
                     word_reduce)
from .pd import PDCode, parse_pd, wirtinger
from .covers import CoverData, reidemeister_schreier
from .reps import (PermutationAssignment, Representation, enumerate_characters, pullback,
                   search_symmetric, standard_module, validate)
from .alexander import (AlexanderResult, TwistData, alexander_matrix, check_turaev_identity, compute,
                        delta0, delta1_full, delta1_wada, delta2, one_variable_suite, twist_block)
from .norms import (BoundReport, NewtonPolytope, NormBall2, fibering_obstruction, hopf_like_product,
                    newton_polytope, norm_ball_2d, seminorm_eval, thurston_bound)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Field",
    "LaurentPoly",
    "laurent_canonical",
    "poly_gcd",
    "specialize",
    "PolyMatrix",
    "minor_gcd",
    "poly_det",
    "smith_normal_form",
    "AbelianizationMap",
    "FreeWord",
    "GroupPresentation",
    "abelianization",
    "fox_derivative",
    "word_reduce",
    "PDCode",
    "parse_pd",
    "wirtinger",
    "CoverData",
    "reidemeister_schreier",
    "PermutationAssignment",
    "Representation",
    "enumerate_characters",
    "pullback",
    "search_symmetric",
    "standard_module",
    "validate",
    "AlexanderResult",
    "TwistData",
    "alexander_matrix",
    "check_turaev_identity",
    "compute",
    "delta0",
    "delta1_full",
    "delta1_wada",
    "delta2",
    "one_variable_suite",
    "twist_block",
    "BoundReport",
    "NewtonPolytope",
    "NormBall2",
    "fibering_obstruction",
    "hopf_like_product",
    "newton_polytope",
    "norm_ball_2d",
    "seminorm_eval",
    "thurston_bound",
]
