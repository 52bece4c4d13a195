"""Exact-arithmetic engine for windowed Hom-complex comparisons.

The package builds complete projective resolutions over quiver-presented
self-injective categories, assembles the dg categories of Hom-complexes
between them, and machine-verifies the comparison maps (augmentation
quasi-isomorphism, scalar-extension isomorphism, tensor dg functor and the
square relating them) degreewise in exact arithmetic.
"""

from .linalg import GF, QQ, DEFAULT_PRIME, Matrix, PrimeField, RationalField

__all__ = [
    "GF",
    "QQ",
    "DEFAULT_PRIME",
    "Matrix",
    "PrimeField",
    "RationalField",
]

__version__ = "0.1.0"
