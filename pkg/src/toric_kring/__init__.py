"""Exact K-ring and cohomology presentations for smooth complete fans and torus manifolds."""

from .charpair import CharPair, euler_characteristic, faces, minimal_nonfaces, validate_char_pair
from .fan import Fan, enumerate_faces, to_char_pair, validate_fan
from .lattice import IntMatrix, SnfResult, is_primitive, is_unimodular_set, pairing, smith_normal_form
from .presentations import (
    adaptive_presentation,
    adaptive_verify,
    build_relations,
    cohomology_presentation,
    graded_ranks_of_kring,
    kring_presentation,
    monomial_basis,
)

__version__ = "0.1.0"

__all__ = [
    "CharPair",
    "Fan",
    "IntMatrix",
    "SnfResult",
    "adaptive_presentation",
    "adaptive_verify",
    "build_relations",
    "cohomology_presentation",
    "enumerate_faces",
    "euler_characteristic",
    "faces",
    "graded_ranks_of_kring",
    "is_primitive",
    "is_unimodular_set",
    "kring_presentation",
    "minimal_nonfaces",
    "monomial_basis",
    "pairing",
    "smith_normal_form",
    "to_char_pair",
    "validate_char_pair",
    "validate_fan",
]
