"""Exact convex hulls over the integers.

Everything is reduced to the hull of a pointed polyhedral cone: a polytope
with points ``p`` becomes the cone over ``(p, 1)``, and a Newton polyhedron
``conv(V) + R_+^n`` becomes the cone over ``(v, 1)`` and ``(e_i, 0)``.  The
cone hull is an incremental beneath-beyond construction with a conflict
graph.  Facets are linear hyperplanes spanned by ``D - 1`` generators, so
normals are integer cofactor vectors and no division ever happens.

Visibility is strict (``<h, g> < 0``).  Points lying on the plane of an
existing facet are not inserted through it, which keeps the boundary a
valid triangulation even when many generators are coplanar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from operator import mul
import random
from math import factorial, gcd, lcm
from typing import Sequence

import numpy as np


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction-free)."""
    m = [list(r) for r in rows]
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if k == 3:
        a, b, c = m
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, k):
            mr = m[r]
            mri = mr[i]
            mi = m[i]
            for c in range(i + 1, k):
                mr[c] = (mr[c] * piv - mri * mi[c]) // prev
        prev = piv
    return sign * m[k - 1][k - 1]


@lru_cache(maxsize=None)
def _minor_tables(D: int) -> list:
    """Index tables for expanding all k-column minors along their first row.

    ``tables[k]`` lists, for each k-subset of columns (in ``combinations``
    order), the pairs ``(sign, column, index of the (k-1)-subset)``.
    """
    index = {}
    tables = [None]
    for k in range(1, D):
        combos = list(combinations(range(D), k))
        index[k] = {cs: i for i, cs in enumerate(combos)}
        if k == 1:
            tables.append([[(1, cs[0], None)] for cs in combos])
            continue
        rows = []
        for cs in combos:
            rows.append([(-1 if t % 2 else 1, cs[t], index[k - 1][cs[:t] + cs[t + 1:]])
                         for t in range(k)])
        tables.append(rows)
    return tables


def normal_vector(rows: Sequence[Sequence[int]]) -> tuple:
    """Primitive integer vector orthogonal to ``len(row) - 1`` given rows.

    Signed maximal minors (cofactors), built bottom-up so that every
    sub-minor is computed once.
    """
    D = len(rows[0])
    tables = _minor_tables(D)
    k = len(rows)
    last = rows[-1]
    minors = [last[t[0][1]] for t in tables[1]]
    for depth in range(2, k + 1):
        r = rows[k - depth]
        minors = [sum(sg * r[c] * minors[j] for sg, c, j in entry if r[c])
                  for entry in tables[depth]]
    # minors are indexed by (D-1)-subsets in combinations order; the subset
    # omitting column c sits at position D-1-c
    out = [minors[D - 1 - c] if c % 2 == 0 else -minors[D - 1 - c] for c in range(D)]
    g = reduce(gcd, out, 0)
    if g > 1:
        out = [x // g for x in out]
    return tuple(out)


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pc = pr[c]
        for i in range(r + 1, len(m)):
            mi = m[i]
            f = mi[c]
            if f:
                m[i] = [pc * a - f * b for a, b in zip(mi, pr)]
                g = reduce(gcd, m[i], 0)
                if g > 1:
                    m[i] = [a // g for a in m[i]]
        r += 1
        if r == len(m):
            break
    return r


def _dot(a, b) -> int:
    return sum(map(mul, a, b))


class LowerDimensional(Exception):
    """Raised internally when generators do not span the ambient space."""

    def __init__(self, rank):
        self.rank = rank
        super().__init__(f"generators span only rank {rank}")


def _independent_subset(gens, D):
    """Greedy choice of D linearly independent generators (indices)."""
    basis_rows = []  # reduced rows with pivot columns
    chosen = []
    # prefer extreme generators so the initial cone is large
    order = sorted(range(len(gens)), key=lambda i: gens[i])
    order = order[:1] + order[-1:] + order[1:-1]
    for i in order:
        v = [Fraction(x) for x in gens[i]]
        for piv, row in basis_rows:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        nz = next((c for c in range(D) if v[c] != 0), None)
        if nz is None:
            continue
        basis_rows.append((nz, v))
        chosen.append(i)
        if len(chosen) == D:
            return chosen
    raise LowerDimensional(len(chosen))


@dataclass
class ConeHull:
    """Boundary triangulation of ``cone(gens)`` in ``Z^D``.

    ``facets`` holds ``(vertex_indices, normal)`` with the inward normal,
    so ``<normal, g> >= 0`` for every generator.
    """

    gens: list
    D: int
    facets: list = field(default_factory=list)

    def true_facets(self) -> dict:
        """Group simplicial facets by their (primitive) supporting hyperplane."""
        groups: dict = {}
        for verts, nrm in self.facets:
            groups.setdefault(nrm, []).append(verts)
        return groups

    def extreme(self) -> list:
        """Indices of generators spanning extreme rays."""
        planes = list(self.true_facets())
        candidates = sorted({i for verts, _ in self.facets for i in verts})
        if not candidates:
            return []
        on_mask = _products([self.gens[i] for i in candidates], planes, self.D) == 0
        out = []
        for i, row in zip(candidates, on_mask):
            on = [planes[k] for k in np.flatnonzero(row)]
            if len(on) >= self.D - 1 and int_rank(on) == self.D - 1:
                out.append(i)
        return out


def _max_abs(rows) -> int:
    return max((abs(x) for r in rows for x in r), default=0)


def _products(A, B, D, amax=None):
    """Exact matrix of dot products ``A @ B.T``; int64 whenever it cannot overflow."""
    amax = _max_abs(A) if amax is None else amax
    dtype = np.int64 if D * amax * _max_abs(B) < 2 ** 62 else object
    A = np.asarray(A, dtype=dtype).reshape(len(A), D)
    B = np.asarray(B, dtype=dtype).reshape(len(B), D)
    return A @ B.T


def cone_hull(gens: Sequence[Sequence[int]]) -> ConeHull:
    """Hull of the pointed cone spanned by integer generators.

    Raises :class:`LowerDimensional` if the generators do not span ``Z^D``.
    Duplicate generators are allowed; generators must span a pointed cone
    (some linear functional positive on all of them).
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    D = len(gens[0])
    base = _independent_subset(gens, D)
    interior = tuple(sum(gens[i][c] for i in base) for c in range(D))
    gmax = _max_abs(gens)
    G = np.array(gens, dtype=np.int64 if gmax < 2 ** 62 else object).reshape(len(gens), D)

    facet_verts: dict = {}
    facet_normal: dict = {}
    ridge_map: dict = {}
    facet_ridges: dict = {}
    outside: dict = {}      # facet id -> array of point indices that see it
    sees: dict = {}         # point index -> set of facet ids it sees
    next_id = 0

    def add_facet(verts, nrm=None):
        nonlocal next_id
        if nrm is None:
            nrm = normal_vector([gens[v] for v in verts])
            if _dot(nrm, interior) < 0:
                nrm = tuple(-x for x in nrm)
        fid = next_id
        next_id += 1
        facet_verts[fid] = verts
        facet_normal[fid] = nrm
        ridges = [verts[:k] + verts[k + 1:] for k in range(len(verts))]
        facet_ridges[fid] = ridges
        for ridge in ridges:
            ridge_map.setdefault(ridge, []).append(fid)
        return fid

    for k in range(D):
        add_facet(tuple(sorted(base[:k] + base[k + 1:])))

    def conflicts(cands, nrm):
        if len(cands) > 48:
            idx = np.fromiter(cands, dtype=np.int64, count=len(cands))
            return idx[_products(G[idx], [nrm], D, gmax)[:, 0] < 0].tolist()
        return [p for p in cands if _dot(nrm, gens[p]) < 0]

    in_base = set(base)
    rest = [j for j in range(len(gens)) if j not in in_base]
    for fid, nrm in facet_normal.items():
        hit = conflicts(rest, nrm)
        outside[fid] = hit
        for j in hit:
            sees.setdefault(j, set()).add(fid)

    # randomized (but reproducible) insertion order keeps the expected number
    # of intermediate facets small
    order = list(range(len(gens)))
    random.Random(len(gens)).shuffle(order)
    for j in order:
        visible = sees.pop(j, None)
        if not visible:
            continue
        horizon = []
        for fid in visible:
            for ridge in facet_ridges[fid]:
                pair = ridge_map[ridge]
                other = pair[0] if pair[1] == fid else pair[1]
                if other not in visible:
                    horizon.append((ridge, fid, other))
        # conflicts of a new facet are among those of the two facets it replaces
        g = gens[j]
        new_ids = []
        for ridge, fid, other in horizon:
            # both old hyperplanes contain the ridge, so the new one is a
            # combination of them vanishing at g; coefficients are >= 0
            hf, ho = facet_normal[fid], facet_normal[other]
            a, b = _dot(ho, g), -_dot(hf, g)
            nrm = [a * x + b * y for x, y in zip(hf, ho)]
            c = reduce(gcd, nrm, 0)
            new_ids.append(add_facet(tuple(sorted(ridge + (j,))), tuple(x // c for x in nrm)))
        # a point sees a new facet only if it saw one of the facets it came
        # from, so the pooled outside sets are enough candidates for all of them
        pool = set()
        for fid in visible.union([h[2] for h in horizon]):
            pool.update(outside[fid])
        cands = [p for p in pool if p in sees]
        for nid in new_ids:
            outside[nid] = []
        if cands:
            idx = np.array(cands, dtype=np.int64)
            hits = _products(G[idx], [facet_normal[nid] for nid in new_ids], D, gmax) < 0
            for k, nid in enumerate(new_ids):
                hit = idx[hits[:, k]].tolist()
                outside[nid] = hit
                for p in hit:
                    sees[p].add(nid)
        for fid in visible:
            del facet_verts[fid]
            del facet_normal[fid]
            for ridge in facet_ridges.pop(fid):
                lst = ridge_map[ridge]
                lst.remove(fid)
                if not lst:
                    del ridge_map[ridge]
            for p in outside.pop(fid):
                s = sees.get(p)
                if s is not None:
                    s.discard(fid)
                    if not s:
                        del sees[p]  # swallowed by the grown hull

    hull = ConeHull(gens, D)
    hull.facets = [(facet_verts[f], facet_normal[f]) for f in sorted(facet_verts)]
    return hull


# ---------------------------------------------------------------------------
# Polytopes (bounded point sets)


def _integerize(points) -> tuple:
    """Scale rational points to integers; returns (int points, scale)."""
    fracs = [tuple(Fraction(x) for x in p) for p in points]
    den = 1
    for p in fracs:
        for x in p:
            den = lcm(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in fracs], den


@dataclass
class HullResult:
    """Exact hull of a finite point set.

    ``vertices`` and ``simplices`` index into ``points``; ``facets`` are
    ``(normal, offset, vertex_indices)`` with ``<normal, x> >= offset`` on
    the hull.  For lower-dimensional input ``full_dimensional`` is False,
    ``dimension`` is the affine dimension and facets/simplices are empty.
    """

    points: list
    dimension: int
    full_dimensional: bool
    vertices: list
    facets: list
    simplices: list


def convex_hull(points, d: int | None = None) -> HullResult:
    points = [tuple(Fraction(x) for x in p) for p in points]
    if not points:
        raise ValueError("convex hull of an empty point set")
    d = len(points[0]) if d is None else d
    if any(len(p) != d for p in points):
        raise ValueError("points must all have dimension d")
    uniq = sorted(set(points))
    if len(uniq) == 1:
        return HullResult(points, 0, d == 0, [points.index(uniq[0])], [], [])
    ints, scale = _integerize(uniq)
    lifted = [p + (1,) for p in ints]
    try:
        ch = cone_hull(lifted)
    except LowerDimensional as exc:
        aff = exc.rank - 1
        verts = _lower_dim_vertices(uniq, aff)
        return HullResult(points, aff, False, sorted({points.index(v) for v in verts}), [], [])

    first = {}
    for k, p in enumerate(points):
        first.setdefault(p, k)
    back = [first[u] for u in uniq]
    ext = ch.extreme()
    facets = []
    for nrm in sorted(ch.true_facets()):
        vs = sorted(back[i] for i in ext if _dot(nrm, lifted[i]) == 0)
        normal = tuple(Fraction(x) for x in nrm[:-1])
        offset = Fraction(-nrm[-1], scale)
        facets.append((normal, offset, vs))
    apex = ext[0]
    simplices = []
    for verts, _ in ch.facets:
        if apex in verts:
            continue
        rows = [lifted[apex]] + [lifted[i] for i in verts]
        if det(rows) != 0:
            simplices.append(tuple(sorted([back[apex]] + [back[i] for i in verts])))
    return HullResult(points, d, True, sorted(back[i] for i in ext), facets, simplices)


def _lower_dim_vertices(uniq, aff):
    """Extreme points of an affinely degenerate set via coordinate projection."""
    if aff == 0:
        return [uniq[0]]
    base = uniq[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in uniq[1:]]
    d = len(base)
    for cols in combinations(range(d), aff):
        if rank([[v[c] for c in cols] for v in diffs]) == aff:
            proj = [tuple(p[c] for c in cols) for p in uniq]
            res = convex_hull(proj)
            return [uniq[i] for i in res.vertices]
    raise AssertionError("no injective projection found")


@dataclass(frozen=True)
class RationalPolytope:
    dimension: int
    vertices: tuple

    @classmethod
    def from_points(cls, points, d: int | None = None) -> "RationalPolytope":
        res = convex_hull(points, d)
        d = len(res.points[0]) if d is None else d
        return cls(d, tuple(res.points[i] for i in res.vertices))


def simplex_volume(vertices) -> Fraction:
    """Euclidean volume of a d-simplex given d+1 rational vertices."""
    v0 = vertices[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(v, v0)] for v in vertices[1:]]
    ints, scale = _integerize(rows)
    d = len(rows)
    return Fraction(abs(det(ints)), factorial(d) * scale ** d)


def polytope_volume(P) -> Fraction:
    """Exact Euclidean volume; 0 for lower-dimensional input.

    Accepts a :class:`RationalPolytope`, a :class:`HullResult` or a plain
    point list.
    """
    if isinstance(P, RationalPolytope):
        points, d = list(P.vertices), P.dimension
    elif isinstance(P, HullResult):
        return _hull_volume(P)
    else:
        points, d = list(P), None
    if not points:
        return Fraction(0)
    return _hull_volume(convex_hull(points, d))


def _hull_volume(res: HullResult) -> Fraction:
    if not res.full_dimensional or not res.simplices:
        return Fraction(0)
    ints, scale = _integerize(res.points)
    d = res.dimension
    total = 0
    for s in res.simplices:
        v0 = ints[s[0]]
        total += abs(det([[a - b for a, b in zip(ints[i], v0)] for i in s[1:]]))
    return Fraction(total, factorial(d) * scale ** d)
