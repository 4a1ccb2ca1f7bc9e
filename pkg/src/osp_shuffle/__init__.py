"""Exact computations in the quantum shuffle superalgebra of osp(1|2n)."""

__version__ = "0.1.0"

from .cartan import Root, RootDatum, Weight, datum
from .scalar import LaurentPoly, RationalFunction, bar, parse_scalar, super_qfact, super_qint
from .shuffle import Element, ShuffleAlgebra, TensorElement, algebra
from .words import canonical_factorize, dominant_words, is_dominant, is_lyndon, parse_word

__all__ = [
    "Element",
    "LaurentPoly",
    "RationalFunction",
    "Root",
    "RootDatum",
    "ShuffleAlgebra",
    "TensorElement",
    "Weight",
    "algebra",
    "bar",
    "canonical_factorize",
    "datum",
    "dominant_words",
    "is_dominant",
    "is_lyndon",
    "parse_scalar",
    "parse_word",
    "super_qfact",
    "super_qint",
]
