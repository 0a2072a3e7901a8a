"""Exact Clifford algebras over small fields, with the machinery to study the
projective action of their Lipschitz groups: points sets on the projective
space of the algebra, the twisted adjoint representation, its kernel, and
invariance under rescaling the quadratic form."""

from .fields import gf, parse_field, rationals
from .metric import (
    QuadraticSpace,
    diagonal_space,
    hyperbolic_pair,
    hyperbolic_plane,
    zero_space,
)
from .clifford import Multivector
from .lipschitz import Ray

__version__ = "0.1.0"

__all__ = [
    "gf",
    "rationals",
    "parse_field",
    "QuadraticSpace",
    "diagonal_space",
    "zero_space",
    "hyperbolic_plane",
    "hyperbolic_pair",
    "Multivector",
    "Ray",
    "__version__",
]
