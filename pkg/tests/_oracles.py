"""Reference computations that share no code with the package."""

from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod
import random


def staircase_covolume_2d(points):
    """Area of R_+^2 minus Gamma_+ for a convenient planar support.

    Lower chain by Andrew's monotone chain between the lowest point on the
    y-axis and the lowest point on the x-axis, then trapezoids.
    """
    pts = set(map(tuple, points))
    a = min(x for x, y in pts if y == 0)
    b = min(y for x, y in pts if x == 0)
    chain_pts = sorted(p for p in pts if p[0] < a) + [(a, 0)]
    hull = []
    for p in chain_pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    assert hull[0] == (0, b)
    area = Fraction(0)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        area += Fraction((x2 - x1) * (y1 + y2), 2)
    return area


def shoelace(poly):
    s = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        s += x1 * y2 - x2 * y1
    return Fraction(abs(s), 2)


def brieskorn_pham_alternating_sum(exps):
    """Σ_I (-1)^(n-|I|) |I|! covol(simplex_I) + (-1)^n for x1^a1 + ... + xn^an."""
    n = len(exps)
    total = Fraction((-1) ** n)
    for j in range(1, n + 1):
        for I in combinations(range(n), j):
            covol = Fraction(prod(exps[i] for i in I), factorial(j))
            total += (-1) ** (n - j) * factorial(j) * covol
    return total


def standard_monomials(gens, n):
    """Count monomials outside a monomial ideal given by exponent generators."""
    bound = []
    for i in range(n):
        pure = [g[i] for g in gens if all(g[k] == 0 for k in range(n) if k != i)]
        bound.append(min(pure))
    return sum(1 for e in product(*[range(b) for b in bound])
               if not any(all(e[i] >= g[i] for i in range(n)) for g in gens))


def _quotient_dim(polys, symbols):
    import sympy as sp
    G = sp.groebner(polys, *symbols, order="grevlex")
    lead = [sp.Poly(g, *symbols).monoms(order="grevlex")[0] for g in G.exprs]
    return standard_monomials(lead, len(symbols))


def hypersurface_mu(expr, symbols):
    """dim of the Milnor algebra; valid for quasi-homogeneous isolated singularities."""
    import sympy as sp
    return _quotient_dim([sp.diff(expr, t) for t in symbols], symbols)


def icis_mu(f1, f2, symbols):
    """Le-Greuel: μ(f1) + μ(f1, f2) = dim O/(f1, 2x2 minors), globally for
    quasi-homogeneous germs.  f1 is replaced by a combination with an
    isolated singularity, which defines the same complete intersection."""
    import sympy as sp
    for c in (1, 2, 3, 5, 7):
        g = c * f1 + (c + 1) * f2
        try:
            mu1 = hypersurface_mu(g, symbols)
        except ValueError:
            continue
        J = sp.Matrix([[sp.diff(h, t) for t in symbols] for h in (g, f2)])
        m = len(symbols)
        minors = [J[:, [i, j]].det() for i in range(m) for j in range(i + 1, m)]
        return _quotient_dim([g] + minors, symbols) - mu1
    raise ValueError("no combination with an isolated singularity")


def random_convenient_support(rng: random.Random, n, max_exp, count):
    pts = {tuple(rng.randint(1, max_exp) if k == i else 0 for k in range(n)) for i in range(n)}
    while len(pts) < count:
        pts.add(tuple(rng.randint(0, max_exp) for _ in range(n)))
    pts.discard((0,) * n)
    return sorted(pts)


def near_hypersurface_support(rng: random.Random, n, count, c, max_exp=12, convenient=True):
    """Lattice points with prod(x_i + 1) just above c.

    Such points all sit close to one hypersurface, so most of them end up as
    vertices: a hard case for the hull and Minkowski code.
    """
    pool = [p for p in product(range(max_exp + 1), repeat=n)
            if c <= prod(x + 1 for x in p) < c * 1.25]
    pts = set(rng.sample(pool, min(count - n, len(pool))))
    if convenient:
        for i in range(n):
            pts.add(tuple(c - 1 if j == i else 0 for j in range(n)))
    return sorted(pts)
