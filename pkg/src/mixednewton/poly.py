"""Exact polynomial germs and the input language.

Polynomials are stored as sorted tuples of ``(exponent, coefficient)`` pairs
with Gaussian-rational coefficients.  Only the support matters for Newton
numbers, but face functions and the degeneracy matrix keep coefficients, so
everything here is exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ExponentVector = tuple  # tuple[int, ...], entries >= 0


class ParseError(ValueError):
    """Malformed input text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class GermError(ValueError):
    """Input is syntactically fine but does not describe a valid map germ."""


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not exact")
        if isinstance(value, str):
            return parse_coefficient(value)
        return cls(Fraction(value))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        if not self.re:
            return f"{_frac_str(self.im)}i"
        sign = "-" if self.im < 0 else "+"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}i"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_coefficient(text: str) -> GaussianRational:
    """Parse ``"3"``, ``"-1/2"``, ``"1/2+3i"``, ``"-2i"`` into an exact value."""
    text = text.strip()
    p = _Parser(text if text.startswith("(") else f"({text})")
    value = p.parse_coef()
    p.take("end")
    return value


@dataclass(frozen=True)
class PolyExpr:
    """A polynomial in ``dimension`` variables.

    ``terms`` is sorted lexicographically by exponent; coefficients are
    nonzero and exponents unique.  The empty tuple is the zero polynomial,
    which is legal as a value (face functions, matrix entries) but rejected
    by the parser.
    """

    dimension: int
    terms: tuple = ()

    @classmethod
    def from_terms(cls, dimension: int, pairs: Iterable) -> "PolyExpr":
        acc: dict = {}
        for exp, coef in pairs:
            exp = tuple(int(e) for e in exp)
            if len(exp) != dimension:
                raise GermError(f"exponent {exp} has length {len(exp)}, expected {dimension}")
            if any(e < 0 for e in exp):
                raise GermError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, GaussianRational(Fraction(0))) + GaussianRational.of(coef)
        return cls(dimension, tuple(sorted((e, c) for e, c in acc.items() if c)))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> frozenset:
        return frozenset(e for e, _ in self.terms)

    def coefficient(self, exp) -> GaussianRational:
        for e, c in self.terms:
            if e == tuple(exp):
                return c
        return GaussianRational(Fraction(0))

    def __add__(self, other: "PolyExpr") -> "PolyExpr":
        return PolyExpr.from_terms(self.dimension, self.terms + other.terms)

    def __sub__(self, other: "PolyExpr") -> "PolyExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyExpr":
        return PolyExpr.from_terms(self.dimension, ((e, a * c) for e, a in self.terms))

    def euler_derivative(self, j: int) -> "PolyExpr":
        """``x_j * d/dx_j`` applied to self (j is 0-based)."""
        return PolyExpr.from_terms(self.dimension, ((e, a * e[j]) for e, a in self.terms))

    def restrict_terms(self, keep) -> "PolyExpr":
        return PolyExpr(self.dimension, tuple((e, c) for e, c in self.terms if keep(e)))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else default_names(self.dimension)
        out = []
        for k, (exp, coef) in enumerate(self.terms):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e]
            mono = "*".join(factors) if factors else "1"
            if coef.im:
                piece = f"({coef})*{mono}"
                sign = "+"
            else:
                sign = "-" if coef.re < 0 else "+"
                mag = abs(coef.re)
                piece = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
            if k == 0:
                out.append(piece if sign == "+" else f"-{piece}")
            else:
                out.append(f" {sign} {piece}")
        return "".join(out)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class AnalyticMapGerm:
    n: int
    components: tuple
    names: tuple = ()

    def __post_init__(self):
        if not self.components:
            raise GermError("a map germ needs at least one component")
        if any(c.dimension != self.n for c in self.components):
            raise GermError("all components must share the ambient dimension")
        if self.p > self.n:
            raise GermError(f"p = {self.p} components exceeds n = {self.n}")

    @property
    def p(self) -> int:
        return len(self.components)

    def supports(self) -> list:
        return [c.support() for c in self.components]

    def to_text(self) -> str:
        return "; ".join(c.to_text(self.names or None) for c in self.components)


def support(h: PolyExpr) -> frozenset:
    return h.support()


_LETTERS = ("x", "y", "z", "w")


def default_names(n: int) -> list:
    return list(_LETTERS[:n]) if n <= len(_LETTERS) else [f"x{i + 1}" for i in range(n)]


def _infer_names(used: set) -> list:
    indexed = [u for u in used if re.fullmatch(r"x\d+", u)]
    if indexed and len(indexed) != len(used):
        raise GermError("cannot mix x1..xn names with x,y,z,w")
    if indexed:
        top = max(int(u[1:]) for u in indexed)
        if any(int(u[1:]) == 0 for u in indexed):
            raise GermError("indexed variables start at x1")
        return [f"x{i + 1}" for i in range(top)]
    unknown = used - set(_LETTERS)
    if unknown:
        raise GermError(f"unknown variables {sorted(unknown)}; pass an explicit variable list")
    top = max((_LETTERS.index(u) for u in used), default=0)
    return list(_LETTERS[:top + 1])


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^;()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "num" and not value.isdigit():
            raise ParseError(f"floating literal {value!r} not allowed; use a/b", start)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # map := poly (";" poly)* ; poly := [sign] term (sign term)* ;
    # term := [coef "*"] factor ("*" factor)* ; factor := var ["^" nat] ;
    # coef := nat ["/" nat] | "(" rational [sign rational "i"] ")"

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.toks[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def parse_map(self) -> list:
        polys = [self.parse_poly()]
        while self.at("op", ";"):
            self.take()
            polys.append(self.parse_poly())
        self.take("end")
        return polys

    def parse_poly(self) -> list:
        start = self.peek()[2]
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        terms = [self.parse_term(sign)]
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.parse_term(sign))
        return start, terms

    def parse_term(self, sign: int):
        pos = self.peek()[2]
        coef = GaussianRational(Fraction(sign))
        factors = []
        if self.at("num") or self.at("op", "("):
            coef = coef * self.parse_coef()
            if not self.at("op", "*"):
                return pos, coef, factors
            self.take()
        factors.append(self.parse_factor())
        while self.at("op", "*"):
            self.take()
            factors.append(self.parse_factor())
        return pos, coef, factors

    def parse_rational(self) -> Fraction:
        num = int(self.take("num")[1])
        if self.at("op", "/"):
            self.take()
            tok = self.take("num")
            if int(tok[1]) == 0:
                raise ParseError("division by zero", tok[2])
            return Fraction(num, int(tok[1]))
        return Fraction(num)

    def parse_coef(self) -> GaussianRational:
        if not self.at("op", "("):
            return GaussianRational(self.parse_rational())
        self.take()
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        re_part, im_part = Fraction(0), Fraction(0)
        if self.at("name", "i"):
            self.take()
            im_part = Fraction(sign)
        else:
            first = sign * self.parse_rational()
            if self.at("name", "i"):
                self.take()
                im_part = first
            else:
                re_part = first
                if self.at("op", "+") or self.at("op", "-"):
                    s = -1 if self.take()[1] == "-" else 1
                    im_part = s * (self.parse_rational() if self.at("num") else Fraction(1))
                    self.take("name", "i")
        self.take("op", ")")
        return GaussianRational(re_part, im_part)

    def parse_factor(self):
        tok = self.take("name")
        power = 1
        if self.at("op", "^"):
            self.take()
            power = int(self.take("num")[1])
        return tok[1], power, tok[2]


def parse_map(text: str, variables: Sequence[str] | None = None,
              dimension: int | None = None) -> AnalyticMapGerm:
    """Parse ``"f1; f2; ..."`` into an :class:`AnalyticMapGerm`.

    Without ``variables`` the names must be drawn from ``x, y, z, w`` or
    ``x1 .. xn`` and the dimension is the position of the last one used,
    unless ``dimension`` says otherwise.
    """
    raw = _Parser(text).parse_map()
    used = {name for _, terms in raw for _, _, fs in terms for name, _, _ in fs}
    if variables is not None:
        names = list(variables)
        if len(set(names)) != len(names):
            raise GermError("duplicate variable names")
        unknown = used - set(names)
        if unknown:
            raise GermError(f"undeclared variables {sorted(unknown)}")
    else:
        names = _infer_names(used)
    if dimension is not None:
        if dimension < len(names):
            raise GermError(f"{len(names)} variables but dimension {dimension}")
        if len(names) < dimension:
            extra = [n for n in default_names(dimension) if n not in names]
            names = names + extra[:dimension - len(names)]
    n = len(names)
    index = {name: k for k, name in enumerate(names)}

    components = []
    for start, terms in raw:
        pairs = []
        for pos, coef, factors in terms:
            exp = [0] * n
            for name, power, _ in factors:
                exp[index[name]] += power
            if not any(exp) and coef:
                raise GermError(f"nonzero constant term at position {pos}; germs must vanish at 0")
            pairs.append((tuple(exp), coef))
        h = PolyExpr.from_terms(n, pairs)
        if not h:
            raise GermError(f"component starting at position {start} is the zero polynomial")
        components.append(h)
    return AnalyticMapGerm(n, tuple(components), tuple(names))


def serialize(germ: AnalyticMapGerm) -> str:
    return germ.to_text()


def parse_support_json(data) -> AnalyticMapGerm:
    """Read ``{"n": .., "components": [[exp, ...], ...], "coefficients": ..}``.

    ``data`` may be a JSON string or an already-decoded dict.  Missing
    coefficients default to 1.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        n = int(data["n"])
        comps = data["components"]
    except (KeyError, TypeError) as exc:
        raise GermError(f"support JSON needs 'n' and 'components': {exc}") from None
    coefs = data.get("coefficients")
    if coefs is not None and len(coefs) != len(comps):
        raise GermError("'coefficients' must parallel 'components'")
    components = []
    for k, exps in enumerate(comps):
        cs = coefs[k] if coefs is not None else [1] * len(exps)
        if len(cs) != len(exps):
            raise GermError(f"component {k}: {len(exps)} exponents but {len(cs)} coefficients")
        pairs = []
        for exp, c in zip(exps, cs):
            if isinstance(c, float):
                raise ParseError(f"floating coefficient {c!r} in component {k}; use a string 'a/b'")
            if len(exp) != n:
                raise GermError(f"component {k}: exponent {exp} has wrong length")
            if not any(exp) and GaussianRational.of(c):
                raise GermError(f"component {k}: nonzero constant term")
            pairs.append((exp, GaussianRational.of(c)))
        h = PolyExpr.from_terms(n, pairs)
        if not h:
            raise GermError(f"component {k} is the zero polynomial")
        components.append(h)
    return AnalyticMapGerm(n, tuple(components), tuple(default_names(n)))
