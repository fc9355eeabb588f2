"""Milnor numbers against algebraic oracles (Groebner bases via sympy)."""

import pytest

from mixednewton.mixed import milnor_number
from mixednewton.poly import parse_map

sp = pytest.importorskip("sympy")

from _oracles import hypersurface_mu, icis_mu, standard_monomials  # noqa: E402

x, y, z = sp.symbols("x y z")


@pytest.mark.parametrize("text", [
    "x^2+y^3", "x^3+y^4", "x^3+y^5", "x^2*y+y^4", "x^3+x*y^3", "x^2*y+y^5",
    "x^2+y^2+z^2", "x^3+y^4+z^5", "x^2*y+y^3+z^2", "x^2+y*z",
])
def test_quasi_homogeneous_hypersurfaces(text):
    f = parse_map(text, variables=["x", "y", "z"][:3 if "z" in text else 2])
    symbols = [x, y, z][:f.n]
    expr = sp.sympify(text.replace("^", "**"))
    assert milnor_number(f).mu == hypersurface_mu(expr, symbols)


@pytest.mark.parametrize("f1, f2", [
    ("x^2+y^2+z^2", "y*z"),
    ("x^2+y^3+z^3", "y*z"),
    ("x^2+y*z", "x*y+z^3"),
    ("x^2+y*z+z^3", "x*y"),
    ("x^2+y*z", "x*y+z^4"),
    ("x^2+z^3", "y^2+x*z"),
    ("x^2+y*z^2", "y^2+x*z"),
    ("x^2+z^3", "y^3+x*z"),
])
def test_space_curve_icis(f1, f2):
    expected = icis_mu(sp.sympify(f1.replace("^", "**")), sp.sympify(f2.replace("^", "**")),
                       [x, y, z])
    assert milnor_number(parse_map(f"{f1}; {f2}")).mu == expected


@pytest.mark.parametrize("a, b", [(1, 1), (1, 3), (2, 2), (3, 4), (4, 4)])
def test_monomial_zero_dimensional(a, b):
    # μ = dim O/(x^a, y^b) - 1
    expected = standard_monomials([(a, 0), (0, b)], 2) - 1
    assert milnor_number(parse_map(f"x^{a}; y^{b}", variables=["x", "y"])).mu == expected
