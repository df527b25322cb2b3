"""Indecomposable persistence modules over commutative grids, with exact certification."""

from .exactalg import FieldMatrix, jordan_cell
from .quiver import BoundQuiver, Morphism, Representation, are_isomorphic, end_basis, hom_basis

__all__ = [
    "BoundQuiver",
    "FieldMatrix",
    "Morphism",
    "Representation",
    "are_isomorphic",
    "end_basis",
    "hom_basis",
    "jordan_cell",
]
__version__ = "0.1.0"
