"""Differential equations of plane algebraic curves via symmetric functions."""

from planecurve.curveode import (
    CurveOde,
    PolyMatrix,
    SymbolicCapExceeded,
    build_full_matrix,
    build_sylvester_matrix,
    curve_ode,
    evaluate_determinant,
    expand_determinant,
)
from planecurve.invariants import (
    NABLA_D,
    NABLA_E,
    Derivation,
    NotInPsiSubring,
    PsiExpression,
    halphen_invariant,
    homogenize,
    is_semi_invariant,
    monge_invariant,
    nabla,
)
from planecurve.poly import Lam, MultiPoly
from planecurve.symfunc import (
    AlphabetSeries,
    add_letter,
    lambda_of_multiple,
    lambda_to_psi,
    psi_to_lambda,
    reexpress,
    series_of_alphabet,
    series_power,
)

__version__ = "0.1.0"
