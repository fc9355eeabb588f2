"""Covolumes of convenient Newton polyhedra."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from .hull import HullResult, RationalPolytope, convex_hull, det, polytope_volume
from .polyhedron import NewtonPolyhedron, is_convenient

__all__ = [
    "HullResult", "RationalPolytope", "NonConvenientError", "convex_hull",
    "polytope_volume", "covolume", "boundary_covolume", "truncation_points",
]


class NonConvenientError(ValueError):
    """The polyhedron misses a coordinate axis, so its covolume is infinite."""


def truncation_points(G: NewtonPolyhedron, M: int) -> list:
    """Generators of ``Γ_+ ∩ [0, M]^n``: each vertex with any coordinate set raised to M."""
    pts = set()
    n = G.dimension
    for v in G.vertices:
        for mask in product((False, True), repeat=n):
            pts.add(tuple(M if m else c for c, m in zip(v, mask)))
    return sorted(pts)


def covolume(G: NewtonPolyhedron, box: int | None = None) -> Fraction:
    """``vol(R_+^n \\ Γ_+)`` as ``M^n - vol(Γ_+ ∩ [0, M]^n)``.

    ``box`` defaults to the largest axis intercept; any value at least that
    large gives the same answer.
    """
    if not is_convenient(G):
        raise NonConvenientError(f"{G!r} is not convenient")
    intercepts = G.axis_intercepts()
    M = max(intercepts) if box is None else int(box)
    if M < max(intercepts):
        raise ValueError(f"box size {M} is below the largest intercept {max(intercepts)}")
    n = G.dimension
    return Fraction(M) ** n - polytope_volume(convex_hull(truncation_points(G, M), n))


def boundary_covolume(G: NewtonPolyhedron) -> Fraction:
    """Covolume as the union of cones from the origin over the compact facets.

    Uses the triangulated compact boundary cached on ``G``; no further hull
    is needed, which makes it the fast path for the mixed-volume engine.
    """
    if not is_convenient(G):
        raise NonConvenientError(f"{G!r} is not convenient")
    total = sum(abs(det(tri)) for tri in G.compact_triangles)
    return Fraction(total, factorial(G.dimension))
