"""Auslander-Reiten quivers of Dynkin type A and D, with the machinery they
support: convex orders on positive roots, minimal-pair classification,
R-matrix denominator zeros, Dorey-rule predicates, and an exhaustive
verification harness over all orientations at small rank."""

__version__ = "0.1.0"

from .ar_quiver import ARQuiver, build
from .quiver import DynkinQuiver, all_orientations, coxeter_word, make_height_function
from .root_system import CartanDatum, enumerate_positive_roots

__all__ = [
    "ARQuiver",
    "CartanDatum",
    "DynkinQuiver",
    "all_orientations",
    "build",
    "coxeter_word",
    "enumerate_positive_roots",
    "make_height_function",
    "__version__",
]
