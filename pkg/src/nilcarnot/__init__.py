"""Exact computations around Carnot completions of torsion-free nilpotent groups."""

__version__ = "0.1.0"

from .carnot import GradedLieAlgebra, associated_graded, dilate, is_carnot
from .exactlin import Q, Subspace, kernel, quotient_coords, rref
from .growth import homogeneous_dimension
from .iso import iso_verdict
from .lie import LieAlgebra, lower_central_series, validate
from .nilgroup import GroupElement, bch_multiply, word_ball
from .obstruction import obstruction_verdict

__all__ = [
    "GradedLieAlgebra", "GroupElement", "LieAlgebra", "Q", "Subspace",
    "associated_graded", "bch_multiply", "dilate", "homogeneous_dimension",
    "is_carnot", "iso_verdict", "kernel", "lower_central_series",
    "obstruction_verdict", "quotient_coords", "rref", "validate", "word_ball",
]
