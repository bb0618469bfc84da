"""Exact computer algebra for perfect fields of characteristic p.

The library builds the perfect closure of a rational function field
Z_p(x1..xd) with level-tagged canonical forms, a separability toolkit
for univariate polynomials over it, and finite fields F_{p^n} small
enough to check perfectness exhaustively. A calculator CLI fronts all
of it.
"""

from . import errors
from .errors import PerffieldError
from .fqtower import FqElem, FqField, PerfectReport, check_perfect, embed, make_field
from .multipoly import MultiPoly, poly_gcd
from .perfclosure import PerfContext, PerfElem
from .primefield import PFElem, PrimeField, is_prime
from .ratfunc import RatFunc
from .septools import (
    SepDecomposition,
    SqfDecomposition,
    UniPoly,
    is_separable,
    pth_root_poly,
    separable_decomposition,
    squarefree_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "PerffieldError",
    "PrimeField",
    "PFElem",
    "is_prime",
    "MultiPoly",
    "poly_gcd",
    "RatFunc",
    "PerfContext",
    "PerfElem",
    "UniPoly",
    "SqfDecomposition",
    "SepDecomposition",
    "is_separable",
    "pth_root_poly",
    "squarefree_decomposition",
    "separable_decomposition",
    "FqField",
    "FqElem",
    "PerfectReport",
    "make_field",
    "check_perfect",
    "embed",
    "__version__",
]
