"""Sparse resultants: exact support combinatorics, Poisson-formula evaluation,
hidden-variable solving and tiny-instance reconstruction."""

from .errors import HypothesisError, InputError, NumericalError
from .laurent import LaurentPolynomial, TorusPoint
from .numeric import NumericOptions
from .poisson import ResultantValue, eval_sparse_resultant, hidden_variable_resultant
from .reconstruct import MultihomogeneousIntPolynomial, reconstruct
from .solver import RootList, solve_square_system
from .supports import SupportFamily, analyze

__all__ = [
    "HypothesisError",
    "InputError",
    "LaurentPolynomial",
    "MultihomogeneousIntPolynomial",
    "NumericOptions",
    "NumericalError",
    "ResultantValue",
    "RootList",
    "SupportFamily",
    "TorusPoint",
    "analyze",
    "eval_sparse_resultant",
    "hidden_variable_resultant",
    "reconstruct",
    "solve_square_system",
]
