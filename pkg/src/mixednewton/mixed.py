"""Mixed covolumes, the mixed Newton number and Milnor numbers of ICIS germs.

The covolume of ``λ_1 Γ_1 + ... + λ_p Γ_p`` is a homogeneous polynomial of
degree ``d`` in the weights; its coefficients, divided by multinomials, are
the mixed covolumes.  We recover them by exact interpolation.

Evaluating the covolume at many weight vectors is cheap because the normal
fan of a positive Minkowski combination does not depend on the weights:
the sum is computed once with unit weights, keeping track of which tuple of
summand vertices produced each vertex, and a pulling triangulation of the
compact facets is taken purely from the face lattice.  Each further
evaluation is then a sum of determinants.  Held-out weights are always
re-checked against a Minkowski sum built from scratch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Sequence

import numpy as np

from .hull import det
from .poly import AnalyticMapGerm
from .polyhedron import (NewtonPolyhedron, is_convenient, minkowski_vertex_tuples,
                         minkowski_weighted_sum, newton_polyhedron, restrict)
from .volume import NonConvenientError, boundary_covolume, covolume


class InterpolationError(ArithmeticError):
    """The covolume samples are not reproduced by a degree-d polynomial."""


class StabilizationError(RuntimeError):
    """ν(N) did not become constant under doubling of the extension exponent."""

    def __init__(self, message: str, trace: list):
        self.trace = trace
        super().__init__(message)


def compositions(d: int, p: int) -> list:
    """All ``(k_1..k_p)`` with ``k_i >= 0`` summing to ``d``, lexicographic descending."""
    if p == 1:
        return [(d,)]
    return [(k,) + rest for k in range(d, -1, -1) for rest in compositions(d - k, p - 1)]


def multinomial(k: Sequence[int]) -> int:
    return factorial(sum(k)) // prod(factorial(x) for x in k)


class MinkowskiStructure:
    """Weight-independent combinatorics of ``Σ λ_i Γ_i`` (all λ_i > 0)."""

    def __init__(self, polys: Sequence[NewtonPolyhedron]):
        polys = list(polys)
        self.polys = polys
        self.dimension = n = polys[0].dimension
        G, labels = minkowski_vertex_tuples(polys)
        coords = dict(zip(labels, G.vertices))
        self.labels = labels
        self.unit_sum = G
        index = {lab: i for i, lab in enumerate(labels)}
        pts = [coords[lab] for lab in labels]
        Q = np.array([q for q, _ in G.facets], dtype=object)
        offsets = np.array([d for _, d in G.facets], dtype=object)
        on_mask = np.array(pts, dtype=object) @ Q.T == offsets
        facet_sets = []
        compact = []
        for k, (q, _) in enumerate(G.facets):
            on = frozenset(np.flatnonzero(on_mask[:, k]).tolist())
            facet_sets.append(on)
            if all(c > 0 for c in q):
                compact.append(on)
        self._facet_sets = facet_sets
        self._memo: dict = {}
        simplices = []
        for F in compact:
            simplices.extend(self._pull(F, n - 1))
        self.simplices = simplices
        self._index = index

    def _pull(self, F: frozenset, dim: int) -> list:
        """Pulling triangulation of the face with vertex set F (vertex indices)."""
        if len(F) == dim + 1:
            return [tuple(sorted(F))]
        key = F
        if key in self._memo:
            return self._memo[key]
        a = min(F)
        cuts = {F & S for S in self._facet_sets}
        cuts = [C for C in cuts if C and C != F]
        maximal = [C for C in cuts if not any(C < D for D in cuts)]
        out = []
        for C in maximal:
            if a not in C:
                out.extend((a,) + s for s in self._pull(C, dim - 1))
        self._memo[key] = out
        return out

    def vertices_at(self, weights: Sequence[int]) -> list:
        return [tuple(sum(w * v[c] for w, v in zip(weights, lab)) for c in range(self.dimension))
                for lab in self.labels]

    def covolume(self, weights: Sequence[int]) -> Fraction:
        pts = self.vertices_at(weights)
        total = sum(abs(det([pts[i] for i in s])) for s in self.simplices)
        return Fraction(total, factorial(self.dimension))

    def covolumes(self, weight_list: Sequence[Sequence[int]]) -> list:
        """``covolume`` for many weight tuples at once (exact, batched)."""
        n = self.dimension
        if n > 6 or not self.simplices:
            return [self.covolume(w) for w in weight_list]
        # labels: (vertex, summand, coordinate); weights: (sample, summand)
        L = np.array(self.labels, dtype=object)
        W = np.array(weight_list, dtype=object)
        pts = np.einsum("sp,vpc->svc", W, L)
        S = np.array(self.simplices, dtype=np.int64)
        dets = _batched_det(pts[:, S])          # (sample, simplex)
        totals = np.abs(dets).sum(axis=1)
        f = factorial(n)
        return [Fraction(int(t), f) for t in totals]


def _batched_det(M):
    """Determinants over the last two axes of an object array (Laplace)."""
    k = M.shape[-1]
    if k == 1:
        return M[..., 0, 0]
    if k == 2:
        return M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]
    total = 0
    rest = M[..., 1:, :]
    for j in range(k):
        minor = _batched_det(np.delete(rest, j, axis=-1))
        term = M[..., 0, j] * minor
        total = total + term if j % 2 == 0 else total - term
    return total


def _solve(A: list, b: list) -> list:
    """Exact Gaussian elimination; raises InterpolationError if singular."""
    m = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(m):
        piv = next((r for r in range(c, m) if M[r][c] != 0), None)
        if piv is None:
            raise InterpolationError("singular interpolation system")
        M[c], M[piv] = M[piv], M[c]
        pr = M[c]
        inv = 1 / pr[c]
        for r in range(m):
            if r != c and M[r][c]:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], pr)]
    return [M[r][m] / M[r][r] for r in range(m)]


def _monomial(lam, k) -> int:
    return prod(x ** e for x, e in zip(lam, k))


def _lattice(d: int, p: int) -> list:
    """Principal lattice ``{1 + a : |a| <= d}`` in p-1 variables, λ_p = 1."""
    if p == 1:
        return [(1,)]
    pts = []
    for k in compositions(d, p):
        pts.append(tuple(1 + x for x in k[:-1]) + (1,))
    return sorted(pts)


@dataclass
class MixedCovolumeTable:
    dimension: int
    p: int
    entries: dict
    samples: list = field(default_factory=list)
    held_out: list = field(default_factory=list)

    def __getitem__(self, k) -> Fraction:
        return self.entries[tuple(k)]

    def polynomial(self, weights: Sequence[int]) -> Fraction:
        """``covol(Σ λ_i Γ_i)`` reconstructed from the table."""
        return sum((multinomial(k) * v * _monomial(weights, k) for k, v in self.entries.items()),
                   Fraction(0))

    def mixed_part(self) -> Fraction:
        """Sum of the entries with every ``k_i >= 1``."""
        return sum((v for k, v in self.entries.items() if min(k) >= 1), Fraction(0))


def _check_polys(polys, what="mixed covolumes"):
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polyhedron")
    d = polys[0].dimension
    if any(P.dimension != d for P in polys):
        raise ValueError("polyhedra live in different dimensions")
    for k, P in enumerate(polys):
        if not is_convenient(P):
            raise NonConvenientError(f"{what} need convenient polyhedra; #{k + 1} is not")
    return polys, d


def held_out_weights(d: int, p: int, count: int, seed: int = 0, exclude=()) -> list:
    """Deterministic fresh weight tuples, none of them in ``exclude``."""
    rng = random.Random(seed * 7919 + 31 * d + p)
    seen = set(map(tuple, exclude))
    out = []
    hi = d + 3
    tries = 0
    while len(out) < count:
        lam = tuple(rng.randint(1, hi) for _ in range(p))
        tries += 1
        if tries > 50 * count:
            hi += 1
        if lam in seen:
            continue
        seen.add(lam)
        out.append(lam)
    return out


def mixed_covolumes(polys: Sequence[NewtonPolyhedron], held_out: int = 10,
                    seed: int = 0, structure: MinkowskiStructure | None = None
                    ) -> MixedCovolumeTable:
    """Mixed covolumes of convenient polyhedra via exact interpolation.

    ``held_out`` fresh weight tuples are checked against a from-scratch
    Minkowski sum; any disagreement raises :class:`InterpolationError`.
    """
    polys, d = _check_polys(polys)
    p = len(polys)
    st = structure or MinkowskiStructure(polys)
    comps = compositions(d, p)
    samples = _lattice(d, p)
    A = [[_monomial(lam, k) for k in comps] for lam in samples]
    b = st.covolumes(samples)
    coeffs = _solve(A, b)
    entries = {k: c / multinomial(k) for k, c in zip(comps, coeffs)}
    table = MixedCovolumeTable(d, p, entries, samples)
    verify_table(table, polys, held_out, seed)
    return table


def verify_table(table: MixedCovolumeTable, polys: Sequence[NewtonPolyhedron],
                 count: int, seed: int = 0) -> None:
    """Compare the table's polynomial with from-scratch Minkowski sums at
    ``count`` fresh weights; raises :class:`InterpolationError` on mismatch."""
    used = list(table.samples) + list(table.held_out)
    for lam in held_out_weights(table.dimension, table.p, count, seed, used):
        direct = boundary_covolume(minkowski_weighted_sum(polys, lam))
        if table.polynomial(lam) != direct:
            raise InterpolationError(
                f"held-out weights {lam}: polynomial gives {table.polynomial(lam)}, "
                f"direct covolume is {direct}")
        table.held_out.append(lam)


@dataclass
class NewtonNumberReport:
    n: int
    p: int
    nu: Fraction
    constant_term: int
    per_subset: dict                      # 1-based sorted index tuple -> contribution
    convenient: list
    mu: int | None = None
    extension_used: int | None = None
    stabilization_trace: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    inputs: dict = field(default_factory=dict, repr=False)

    def check(self) -> bool:
        return self.nu == sum(self.per_subset.values(), Fraction(0)) + self.constant_term

    def verify(self, held_out: int = 1) -> None:
        """Run held-out checks on every table (see :func:`verify_table`)."""
        for key, table in self.tables.items():
            verify_table(table, self.inputs[key], held_out)


def _subsets(n: int, j: int):
    return combinations(range(n), j)


def newton_number(polys: Sequence[NewtonPolyhedron], n: int | None = None,
                  held_out: int = 1, cache: dict | None = None) -> NewtonNumberReport:
    """The mixed Newton number of convenient polyhedra.

    Sums ``(-1)^(n-j) j! a_j`` over coordinate subspaces of dimension
    ``j >= p``, where ``a_j`` adds up the mixed covolumes of the restricted
    polyhedra with every slot used at least once, then adds ``(-1)^(n-p+1)``.
    ``cache`` maps restricted inputs to tables and may be shared between calls.
    """
    polys = list(polys)
    n = polys[0].dimension if n is None else n
    p = len(polys)
    if p > n:
        raise ValueError(f"p = {p} exceeds n = {n}")
    _check_polys(polys, "the Newton number")
    per_subset = {}
    tables = {}
    inputs = {}
    for j in range(p, n + 1):
        sign = -1 if (n - j) % 2 else 1
        for I in _subsets(n, j):
            restricted = [restrict(P, I) for P in polys]
            ckey = tuple(restricted)
            table = cache.get(ckey) if cache is not None else None
            if table is None:
                table = mixed_covolumes(restricted, held_out=held_out)
                if cache is not None:
                    cache[ckey] = table
            key = tuple(i + 1 for i in I)
            tables[key] = table
            inputs[key] = restricted
            per_subset[key] = sign * factorial(j) * table.mixed_part()
    constant = -1 if (n - p + 1) % 2 else 1
    nu = sum(per_subset.values(), Fraction(0)) + constant
    return NewtonNumberReport(n, p, nu, constant, per_subset, [True] * p,
                              tables=tables, inputs=inputs)


def kouchnirenko_number(G: NewtonPolyhedron) -> Fraction:
    """``Σ_i (-1)^(n-i) i! V_i`` with ``V_i`` the i-dimensional covolumes of all
    coordinate restrictions (``V_0 = 1``), evaluated directly."""
    if not is_convenient(G):
        raise NonConvenientError("the Kouchnirenko number needs a convenient polyhedron")
    n = G.dimension
    total = Fraction((-1) ** n)
    for i in range(1, n + 1):
        vol = sum((covolume(restrict(G, I)) for I in _subsets(n, i)), Fraction(0))
        total += (-1) ** (n - i) * factorial(i) * vol
    return total


def extend_to_convenient(polys, N: int) -> list:
    """Add ``N e_j`` to every component missing a generator on axis j."""
    if N < 1:
        raise ValueError("extension exponent must be positive")
    if isinstance(polys, AnalyticMapGerm):
        polys = [newton_polyhedron(h.support(), polys.n) for h in polys.components]
    out = []
    for P in polys:
        missing = [i for i, c in enumerate(P.axis_intercepts()) if c is None]
        if not missing:
            out.append(P)
            continue
        n = P.dimension
        extra = [tuple(N if k == i else 0 for k in range(n)) for i in missing]
        out.append(newton_polyhedron(set(P.generators) | set(extra), n))
    return out


@dataclass(frozen=True)
class Policy:
    """Extension schedule for non-convenient input: N0, 2 N0, 4 N0, ..."""

    n0: int | None = None
    max_doublings: int = 8

    def start(self, polys: Sequence[NewtonPolyhedron], n: int) -> int:
        if self.n0 is not None:
            return self.n0
        top = max(max(g) for P in polys for g in P.generators)
        return n * (1 + top)


def newton_number_nonconvenient(polys: Sequence[NewtonPolyhedron], n: int | None = None,
                                policy: Policy = Policy(), held_out: int = 1
                                ) -> NewtonNumberReport:
    """ν for possibly non-convenient polyhedra, as the eventual value of
    ν(N) under axis extension with N doubling until two consecutive agree."""
    polys = list(polys)
    n = polys[0].dimension if n is None else n
    if len(polys) > n:
        raise ValueError(f"p = {len(polys)} exceeds n = {n}")
    flags = [is_convenient(P) for P in polys]
    N = policy.start(polys, n)
    if all(flags):
        rep = newton_number(polys, n, held_out=held_out)
        rep.stabilization_trace = [(N, rep.nu)]
        return rep
    # held-out checks are deferred to the two evaluations that get reported
    trace = []
    cache = {}   # subsets untouched by the extension keep their tables
    rep = newton_number(extend_to_convenient(polys, N), n, held_out=0, cache=cache)
    trace.append((N, rep.nu))
    for _ in range(policy.max_doublings):
        nxt = newton_number(extend_to_convenient(polys, 2 * N), n, held_out=0, cache=cache)
        trace.append((2 * N, nxt.nu))
        if nxt.nu == rep.nu:
            rep.verify(held_out)
            nxt.verify(held_out)
            rep.convenient = flags
            rep.extension_used = N
            rep.stabilization_trace = trace
            return rep
        rep, N = nxt, 2 * N
    raise StabilizationError(
        f"ν(N) did not stabilize after {policy.max_doublings} doublings", trace)


def milnor_number(f: AnalyticMapGerm, policy: Policy = Policy(),
                  held_out: int = 1) -> NewtonNumberReport:
    """μ0(f) as the mixed Newton number of the component Newton polyhedra.

    Non-degeneracy and the ICIS property are assumed, not checked; a ν that
    is not a non-negative integer is reported with a warning instead of μ.
    """
    polys = [newton_polyhedron(h.support(), f.n) for h in f.components]
    rep = newton_number_nonconvenient(polys, f.n, policy, held_out=held_out)
    if rep.nu.denominator == 1 and rep.nu >= 0:
        rep.mu = int(rep.nu)
    else:
        rep.warnings.append(
            f"ν = {rep.nu} is not a non-negative integer; the germ is probably "
            "degenerate or not an isolated complete intersection")
    return rep
