"""Non-degeneracy data: face systems, the degeneracy matrix and a JSON export.

Nothing here decides non-degeneracy.  Deciding whether a face system has a
zero in the torus is a computer-algebra problem, so the exact systems are
handed to external tools instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .poly import AnalyticMapGerm, PolyExpr
from .polyhedron import (Face, NewtonPolyhedron, face_function, face_of_direction,
                         face_sum_vertices, minkowski_weighted_sum, newton_polyhedron)


def _primitive(q) -> tuple:
    q = [Fraction(c) for c in q]
    m = lcm(*(c.denominator for c in q))
    ints = [int(c * m) for c in q]
    g = gcd(*ints) or 1
    return tuple(c // g for c in ints)


def euler_defect(h: PolyExpr, q: Sequence, d) -> PolyExpr:
    """``Σ q_j x_j ∂_j h - d h``; zero iff h is weighted homogeneous of type (q, d)."""
    acc = h.scale(-Fraction(d))
    for j, w in enumerate(q):
        if w:
            acc = acc + h.euler_derivative(j).scale(Fraction(w))
    return acc


@dataclass(frozen=True)
class FaceSystem:
    """The face polynomials ``(f^1)_{σ_1}, ..., (f^p)_{σ_p}`` for a direction q."""

    direction: tuple
    faces: tuple
    polynomials: tuple

    @property
    def values(self) -> tuple:
        return tuple(F.value for F in self.faces)

    def euler_ok(self) -> bool:
        return all(not euler_defect(h, self.direction, d)
                   for h, d in zip(self.polynomials, self.values))

    def supported_on_faces(self) -> bool:
        return all(F.contains(e) for h, F in zip(self.polynomials, self.faces)
                   for e in h.support())


def face_system(f: AnalyticMapGerm, q: Sequence) -> FaceSystem:
    """Faces of each ``Γ_+(f^i)`` in direction q and the matching face functions."""
    q = tuple(Fraction(c) for c in q)
    faces = []
    polys = []
    for h in f.components:
        F = face_of_direction(newton_polyhedron(h.support(), f.n), q)
        faces.append(F)
        polys.append(face_function(h, F))
    return FaceSystem(q, tuple(faces), tuple(polys))


@dataclass(frozen=True)
class DegeneracyMatrix:
    """p x (n+p) matrix: ``x_j ∂f^i/∂x_j`` then ``f^i`` on a diagonal block."""

    n: int
    rows: tuple

    @property
    def p(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> PolyExpr:
        i, j = ij
        return self.rows[i][j]

    def to_text(self, names=None) -> list:
        return [[e.to_text(names) for e in row] for row in self.rows]


def degeneracy_matrix(f: AnalyticMapGerm) -> DegeneracyMatrix:
    zero = PolyExpr(f.n)
    rows = []
    for i, h in enumerate(f.components):
        row = [h.euler_derivative(j) for j in range(f.n)]
        row += [h if k == i else zero for k in range(f.p)]
        rows.append(tuple(row))
    return DegeneracyMatrix(f.n, tuple(rows))


def compact_faces(G: NewtonPolyhedron) -> list:
    """All compact faces of ``Γ_+`` as ``(direction, vertex set)`` pairs.

    Proper faces are exactly the nonempty intersections of facets.  The sum
    of the normals of the facets through a face lies in the relative
    interior of its normal cone, so it selects exactly that face, and the
    face is compact iff that sum is strictly positive.
    """
    verts = list(G.vertices)
    facet_sets = []
    for q, d in G.facets:
        facet_sets.append((q, frozenset(v for v in verts
                                         if sum(a * b for a, b in zip(q, v)) == d)))
    known = {S for _, S in facet_sets if S}
    frontier = set(known)
    while frontier:
        nxt = set()
        for A in frontier:
            for _, B in facet_sets:
                C = A & B
                if C and C not in known:
                    nxt.add(C)
        known |= nxt
        frontier = nxt
    out = []
    for S in known:
        normal = [0] * G.dimension
        for q, B in facet_sets:
            if S <= B:
                normal = [a + b for a, b in zip(normal, q)]
        if all(c > 0 for c in normal):
            out.append((_primitive(normal), S))
    out.sort(key=lambda t: (len(t[1]), sorted(t[1])))
    return out


def _terms_json(h: PolyExpr) -> list:
    return [[list(e), str(c)] for e, c in h.terms]


def export_face_systems(f: AnalyticMapGerm, max_dim: int | None = None) -> dict:
    """One face system per compact face of ``Γ_+(f^1) + ... + Γ_+(f^p)``.

    ``b_sigma`` marks the faces of dimension at most ``p-1``; ``max_dim``
    drops larger faces.  Every system is checked for weighted homogeneity
    and for ``σ = σ_1 + ... + σ_p`` before it is emitted.
    """
    polys = [newton_polyhedron(h.support(), f.n) for h in f.components]
    total = minkowski_weighted_sum(polys)
    faces = []
    for q, verts in compact_faces(total):
        sigma = face_of_direction(total, q)
        dim = sigma.dim
        if max_dim is not None and dim > max_dim:
            continue
        system = face_system(f, q)
        if not system.euler_ok():
            raise AssertionError(f"face polynomial fails the Euler relation for q={q}")
        if face_sum_vertices(system.faces) != verts:
            raise AssertionError(f"summand faces do not add up to the face for q={q}")
        faces.append({
            "q": list(q),
            "d": [str(v) for v in system.values],
            "dim": dim,
            "b_sigma": dim <= f.p - 1,
            "vertices": [list(v) for v in sorted(verts)],
            "systems": [_terms_json(h) for h in system.polynomials],
        })
    return {"n": f.n, "p": f.p, "faces": faces}
