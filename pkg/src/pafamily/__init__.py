"""Exact transition matrices for a family of pseudo-Anosov maps, with verified bounds."""

from .curves import CurveId, CurveSystem, Family, basis
from .digraph import Orientation, from_matrix, path_counts, primitivity_exponent
from .linalg import IntMatrix
from .spectral import IntPolynomial, RootEnclosure, char_poly, expected_char_poly, perron_root
from .twists import WeightVector, apply, phi_matrix, rotation_map, twist_map

__all__ = [
    "CurveId",
    "CurveSystem",
    "Family",
    "IntMatrix",
    "IntPolynomial",
    "Orientation",
    "RootEnclosure",
    "WeightVector",
    "apply",
    "basis",
    "char_poly",
    "expected_char_poly",
    "from_matrix",
    "path_counts",
    "perron_root",
    "phi_matrix",
    "primitivity_exponent",
    "rotation_map",
    "twist_map",
]
