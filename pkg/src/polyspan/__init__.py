"""Exact enumeration of the bounded faces of a halfspace intersection.

A polyhedron is given by halfspaces ``a.x >= b``, a linear objective ``l`` and
a threshold ``B``.  The library computes the complex of faces on which ``l``
stays below ``B`` (for ``B = inf``: the faces on which ``l`` is bounded, which
are the bounded faces), using exact rational linear programming.
"""
from .geometry import (INF, Complex, EmptyPolyhedron, Face, Halfspace, NormalizedSpec,
                       PolyhedronSpec, Vertex, face_dimension, face_passes_threshold,
                       is_bounded_face, minimal_face, preprocess)
from .generators import (BaseUnbounded, MetricInput, box_base, gen_cone, gen_fan2d,
                         gen_hypercube, gen_moment_voronoi, gen_tight_span, square_base)
from .io import ParseError, complex_to_dict, complex_to_json, format_instance, parse_instance
from .linalg import Rational, format_rational, parse_rational
from .lp import Infeasible, LPInstance, Optimal, Unbounded, lex_max, lex_min, verify_outcome
from .oracle import (TooLarge, brute_force_complex, brute_force_face_lattice,
                     brute_force_vertices, diff_complexes)
from .subcomplex import (DimensionExceeded, FaceBoundReport, NogapReport,
                         build_known_d, build_unknown_d, check_face_bounds,
                         euler_characteristic, is_general_position, verify_nogap)
from .vertices import VertexSet, check_vertex_bound, enumerate_vertices, vertex_bound

__version__ = "0.1.0"

__all__ = [
    "BaseUnbounded",
    "Complex",
    "DimensionExceeded",
    "EmptyPolyhedron",
    "Face",
    "FaceBoundReport",
    "Halfspace",
    "INF",
    "Infeasible",
    "LPInstance",
    "MetricInput",
    "NogapReport",
    "NormalizedSpec",
    "Optimal",
    "ParseError",
    "PolyhedronSpec",
    "Rational",
    "TooLarge",
    "Unbounded",
    "Vertex",
    "VertexSet",
    "box_base",
    "brute_force_complex",
    "brute_force_face_lattice",
    "brute_force_vertices",
    "build_known_d",
    "build_unknown_d",
    "check_face_bounds",
    "check_vertex_bound",
    "complex_to_dict",
    "complex_to_json",
    "diff_complexes",
    "enumerate_vertices",
    "euler_characteristic",
    "face_dimension",
    "face_passes_threshold",
    "format_instance",
    "format_rational",
    "gen_cone",
    "gen_fan2d",
    "gen_hypercube",
    "gen_moment_voronoi",
    "gen_tight_span",
    "is_bounded_face",
    "is_general_position",
    "lex_max",
    "lex_min",
    "minimal_face",
    "parse_instance",
    "parse_rational",
    "preprocess",
    "square_base",
    "verify_nogap",
    "verify_outcome",
    "vertex_bound",
]
