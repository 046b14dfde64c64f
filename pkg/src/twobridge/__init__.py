"""Layered triangulations of 2-bridge link complements.

Construct the standard layered (Sakuma-Weeks) ideal triangulation of a
2-bridge link complement from its twist word, simplify it with 3-2 and
4-4 moves, compute Regina-compatible isomorphism signatures, build exact
angle structures block-by-block, and derive volume-based lower and upper
bounds on triangulation complexity.
"""

__version__ = "0.1.0"

from .angles import (
    AngleAssignment,
    Shape,
    assign_angles,
    boundary_deficits,
    expand_to_tetrahedra,
    shape_catalog,
    verify_angle_structure,
)
from .blocks import Block, BlockDecomposition, decompose
from .isosig import are_isomorphic, decode_isosig, encode_isosig
from .moves import SimplificationTrace, move_44, pachner_23, pachner_32, simplify
from .triangulation import (
    EdgeClassTable,
    Triangulation,
    ValidationReport,
    build_sakuma_weeks,
    degree_predicates,
    edge_classes,
    gluing_table,
    validate,
)
from .volume import (
    BoundsReport,
    bounds_report,
    lobachevsky,
    maximize_volume,
    tet_volume,
    theorem_ratio_table,
    v3,
    volume_functional,
)
from .word import Word, enumerate_words, inner_word, is_hyperbolic, normalize, parse_word, render

__all__ = [
    "AngleAssignment",
    "Block",
    "BlockDecomposition",
    "BoundsReport",
    "EdgeClassTable",
    "Shape",
    "SimplificationTrace",
    "Triangulation",
    "ValidationReport",
    "Word",
    "are_isomorphic",
    "assign_angles",
    "boundary_deficits",
    "bounds_report",
    "build_sakuma_weeks",
    "decode_isosig",
    "decompose",
    "degree_predicates",
    "edge_classes",
    "encode_isosig",
    "enumerate_words",
    "expand_to_tetrahedra",
    "gluing_table",
    "inner_word",
    "is_hyperbolic",
    "lobachevsky",
    "maximize_volume",
    "move_44",
    "normalize",
    "pachner_23",
    "pachner_32",
    "parse_word",
    "render",
    "shape_catalog",
    "simplify",
    "tet_volume",
    "theorem_ratio_table",
    "v3",
    "validate",
    "verify_angle_structure",
    "volume_functional",
]
