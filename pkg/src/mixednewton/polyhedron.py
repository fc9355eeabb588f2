"""Newton polyhedra ``conv(S) + R_+^n`` and their faces."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .hull import cone_hull, rank
from .poly import PolyExpr


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _dominated_free(points: Iterable[tuple]) -> list:
    """Drop points that are >= some other point coordinatewise."""
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    if len(pts) < 2:
        return pts
    A = np.array(pts, dtype=object if max(map(max, pts)) >= 2 ** 62 else np.int64)
    keep = np.ones(len(pts), dtype=bool)
    # sorted by coordinate sum, so a dominator always comes earlier
    for start in range(0, len(pts), 256):
        block = A[start:start + 256]
        dom = (A[None, :, :] <= block[:, None, :]).all(axis=2)
        for r in range(len(block)):
            i = start + r
            dom[r, i:] = False
            if dom[r, :i][keep[:i]].any():
                keep[i] = False
    return [p for p, k in zip(pts, keep) if k]


@dataclass(frozen=True, eq=False)
class NewtonPolyhedron:
    """``conv(generators) + R_+^n`` with vertices and facets cached.

    ``facets`` are ``(q, d)`` pairs of a primitive integer normal ``q >= 0``
    and offset ``d``, meaning ``<q, x> >= d``.  Coordinate half-spaces show
    up here when they are facets.  ``compact_triangles`` triangulates the
    compact boundary into ``(n-1)``-simplices given by vertex tuples.
    """

    dimension: int
    generators: frozenset
    vertices: tuple = field(default=())
    facets: tuple = field(default=())
    compact_triangles: tuple = field(default=())

    def __eq__(self, other):
        return (isinstance(other, NewtonPolyhedron)
                and self.dimension == other.dimension
                and set(self.vertices) == set(other.vertices))

    def __hash__(self):
        return hash((self.dimension, frozenset(self.vertices)))

    def __repr__(self):
        return f"NewtonPolyhedron(n={self.dimension}, vertices={sorted(self.vertices)})"

    def contains(self, x) -> bool:
        return all(sum(a * b for a, b in zip(q, x)) >= d for q, d in self.facets) and \
            all(c >= 0 for c in x)

    def axis_intercepts(self) -> list:
        """Smallest ``c`` with ``c*e_i`` a generator, or None per axis."""
        out = []
        for i in range(self.dimension):
            vals = [v[i] for v in self.vertices
                    if all(c == 0 for k, c in enumerate(v) if k != i)]
            out.append(min(vals) if vals else None)
        return out

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertices": [list(v) for v in sorted(self.vertices)],
            "facets": [{"q": list(q), "d": d} for q, d in self.facets],
        }


def newton_polyhedron(S: Iterable[Sequence[int]], n: int | None = None) -> NewtonPolyhedron:
    """Build ``Gamma_+`` from a finite set of exponent vectors."""
    S = [tuple(int(c) for c in a) for a in S]
    if not S:
        raise ValueError("Newton polyhedron of an empty support")
    n = len(S[0]) if n is None else n
    if any(len(a) != n for a in S):
        raise ValueError(f"exponent vectors must have length {n}")
    if any(c < 0 for a in S for c in a):
        raise ValueError("exponents must be non-negative")
    if n == 0:
        raise ValueError("dimension must be positive")

    cands = _dominated_free(S)
    gens = [v + (1,) for v in cands] + [_unit(n, i) + (0,) for i in range(n)]
    ch = cone_hull(gens)
    nv = len(cands)
    vertices = tuple(sorted(cands[i] for i in ch.extreme() if i < nv))
    facets = []
    for h in sorted(ch.true_facets()):
        if any(h[:-1]):  # skip the face at infinity (t >= 0)
            facets.append((h[:-1], -h[-1]))
    tris = []
    for verts, h in ch.facets:
        if all(c > 0 for c in h[:-1]):
            tris.append(tuple(cands[i] for i in verts))
    return NewtonPolyhedron(n, frozenset(S), vertices, tuple(facets), tuple(tris))


def is_convenient(G: NewtonPolyhedron) -> bool:
    return all(c is not None for c in G.axis_intercepts())


class _Empty:
    """Marker for a restriction with no generators on the coordinate subspace."""

    def __repr__(self):
        return "Empty"

    def __bool__(self):
        return False


Empty = _Empty()


def restrict(G: NewtonPolyhedron, I: Iterable[int]):
    """``Gamma_+ ∩ R^I`` as a polyhedron in ``|I|`` coordinates.

    ``I`` holds 0-based coordinate indices.  Returns :data:`Empty` when no
    generator lives in ``R^I``.
    """
    I = sorted(set(I))
    if not I or I[0] < 0 or I[-1] >= G.dimension:
        raise ValueError(f"bad coordinate subset {I}")
    outside = [k for k in range(G.dimension) if k not in I]
    pts = [tuple(a[i] for i in I) for a in G.vertices if all(a[k] == 0 for k in outside)]
    if not pts:
        return Empty
    if len(I) == G.dimension:
        return G
    return newton_polyhedron(pts, len(I))


@dataclass(frozen=True)
class Face:
    """``Δ(q, Γ)``: the points of Γ minimising ``<q, ·>``, and ``d`` the minimum."""

    parent: NewtonPolyhedron
    direction: tuple
    value: Fraction
    points: frozenset       # generators of the parent lying on the face
    vertices: frozenset     # parent vertices on the face

    @property
    def compact(self) -> bool:
        return all(c > 0 for c in self.direction)

    @property
    def dim(self) -> int:
        """Affine dimension of the face (recession directions included)."""
        vs = sorted(self.vertices)
        rows = [tuple(a - b for a, b in zip(v, vs[0])) for v in vs[1:]]
        rows += [_unit(self.parent.dimension, i)
                 for i, c in enumerate(self.direction) if c == 0]
        return rank(rows) if rows else 0

    def contains(self, alpha) -> bool:
        return _pair(self.direction, alpha) == self.value


def _pair(q, a):
    return sum(Fraction(x) * y for x, y in zip(q, a))


def face_of_direction(G: NewtonPolyhedron, q: Sequence) -> Face:
    q = tuple(Fraction(c) for c in q)
    if len(q) != G.dimension:
        raise ValueError("direction has wrong length")
    if any(c < 0 for c in q):
        raise ValueError(f"direction {q} has a negative entry")
    if not any(q):
        raise ValueError("direction must be nonzero")
    d = min(_pair(q, v) for v in G.vertices)
    verts = frozenset(v for v in G.vertices if _pair(q, v) == d)
    pts = frozenset(a for a in G.generators if _pair(q, a) == d)
    return Face(G, q, d, pts, verts)


def minkowski_vertex_tuples(polys: Sequence[NewtonPolyhedron],
                            weights: Sequence[int] | None = None):
    """Vertices of ``Σ λ_i Γ_i`` with the summand vertices producing each.

    Returns ``(polyhedron, labels)`` where ``labels[k]`` is the tuple of
    summand vertices adding up to ``polyhedron.vertices[k]``.  A tuple can
    only give a vertex if every pair in it gives a vertex of the pairwise
    sum, which prunes candidates before the final hull.
    """
    polys = list(polys)
    p = len(polys)
    n = polys[0].dimension
    weights = [1] * p if weights is None else list(weights)
    scaled = [[tuple(w * c for c in v) for v in P.vertices] for P, w in zip(polys, weights)]
    pair_ok = {}
    pair_sum = {}
    if p > 2:
        for i, k in combinations(range(p), 2):
            cands = {}
            for a in scaled[i]:
                for b in scaled[k]:
                    cands.setdefault(tuple(x + y for x, y in zip(a, b)), (a, b))
            G = newton_polyhedron(cands, n)
            pair_ok[i, k] = {cands[v] for v in G.vertices}
            pair_sum[i, k] = G, [cands[v] for v in G.vertices]
    labels = [(v,) for v in scaled[0]]
    coords = {lab: lab[0] for lab in labels}
    G = newton_polyhedron(scaled[0], n)
    for k in range(1, p):
        if (0, 1) in pair_sum and k == 1:
            G, labels = pair_sum[0, 1]
            coords = dict(zip(labels, G.vertices))
            continue
        cands = {}
        for lab in labels:
            base = coords[lab]
            for w in scaled[k]:
                if pair_ok and any((lab[i], w) not in pair_ok[i, k] for i in range(k)):
                    continue
                cands.setdefault(tuple(x + y for x, y in zip(base, w)), lab + (w,))
        G = newton_polyhedron(cands, n)
        labels = [cands[v] for v in G.vertices]
        coords = dict(zip(labels, G.vertices))
    return G, labels


def minkowski_weighted_sum(polys: Sequence[NewtonPolyhedron],
                           weights: Sequence[int] | None = None) -> NewtonPolyhedron:
    """``Σ λ_i Γ_i``; the result is generated by its own vertices."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polyhedron")
    weights = [1] * len(polys) if weights is None else [int(w) for w in weights]
    if len(weights) != len(polys):
        raise ValueError("one weight per polyhedron")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    n = polys[0].dimension
    if any(P.dimension != n for P in polys):
        raise ValueError("dimension mismatch in Minkowski sum")
    if len(polys) == 1 and weights[0] == 1:
        return polys[0]
    G, _ = minkowski_vertex_tuples(polys, weights)
    return replace(G, generators=frozenset(G.vertices))


def decompose_face(sigma: Face, polys: Sequence[NewtonPolyhedron]) -> list:
    """Split a compact face of ``Σ Γ_i`` into faces ``σ_i`` of each summand."""
    if not sigma.compact:
        raise ValueError("only compact faces decompose uniquely")
    return [face_of_direction(P, sigma.direction) for P in polys]


def face_sum_vertices(faces: Sequence[Face]) -> frozenset:
    """Vertices of ``σ_1 + ... + σ_p`` (hull of vertex sums)."""
    from .hull import convex_hull
    pts = [()]
    for F in faces:
        pts = [a + (v,) for a in pts for v in F.vertices]
    sums = sorted({tuple(sum(c) for c in zip(*combo)) for combo in pts})
    res = convex_hull(sums)
    return frozenset(tuple(int(c) for c in res.points[i]) for i in res.vertices)


def face_function(h: PolyExpr, face: Face) -> PolyExpr:
    """The part of ``h`` supported on ``face`` (zero polynomial if none)."""
    return h.restrict_terms(face.contains)
