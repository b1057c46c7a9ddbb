"""Exact workbench for intersecting families of signed vectors and sets."""

from .bounds import BoundResult, formula_F, katona_f
from .core import SignedVector, VectorFamily, enumerate_Lk, make_vector, scalar_product
from .errors import IndexRangeError, InvalidInputError, ResourceLimitError
from .setfam import SetFamily
from .solver import cross_pair_search, exact_F, exact_F_forbidden

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "formula_F", "katona_f",
    "SignedVector", "VectorFamily", "enumerate_Lk", "make_vector", "scalar_product",
    "IndexRangeError", "InvalidInputError", "ResourceLimitError",
    "SetFamily", "cross_pair_search", "exact_F", "exact_F_forbidden",
]
