"""Exact mixed Newton numbers and Milnor numbers of ICIS germs."""

from .hull import RationalPolytope, convex_hull, polytope_volume
from .mixed import (InterpolationError, MixedCovolumeTable, NewtonNumberReport, Policy,
                    StabilizationError, extend_to_convenient, kouchnirenko_number,
                    milnor_number, mixed_covolumes, newton_number,
                    newton_number_nonconvenient)
from .nondegen import (DegeneracyMatrix, FaceSystem, degeneracy_matrix,
                       export_face_systems, face_system)
from .poly import (AnalyticMapGerm, GaussianRational, GermError, ParseError, PolyExpr,
                   parse_map, parse_support_json, serialize, support)
from .polyhedron import (Empty, Face, NewtonPolyhedron, decompose_face, face_function,
                         face_of_direction, is_convenient, minkowski_weighted_sum,
                         newton_polyhedron, restrict)
from .volume import NonConvenientError, boundary_covolume, covolume

__version__ = "0.1.0"

__all__ = [
    "AnalyticMapGerm", "DegeneracyMatrix", "Empty", "Face", "FaceSystem",
    "GaussianRational", "GermError", "InterpolationError", "MixedCovolumeTable",
    "NewtonNumberReport", "NewtonPolyhedron", "NonConvenientError", "ParseError",
    "Policy", "PolyExpr", "RationalPolytope", "StabilizationError",
    "boundary_covolume", "convex_hull", "covolume", "decompose_face",
    "degeneracy_matrix", "export_face_systems", "extend_to_convenient",
    "face_function", "face_of_direction", "face_system", "is_convenient",
    "kouchnirenko_number", "milnor_number", "minkowski_weighted_sum",
    "mixed_covolumes", "newton_number", "newton_number_nonconvenient",
    "newton_polyhedron", "parse_map", "parse_support_json", "polytope_volume",
    "restrict", "serialize", "support",
]
