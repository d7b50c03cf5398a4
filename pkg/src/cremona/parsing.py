"""Recursive-descent reader for maps ``[p0 : p1 : p2]`` and points ``[a : b : c]``.

Grammar::

    map     := '[' expr ':' expr ':' expr ']'
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' INTEGER)?
    atom    := NUMBER | 'x' | 'y' | 'z' | 'i' | '(' expr ')'

Division is only allowed by a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .birational_maps import BirationalMap, gcd_of_components
from .errors import ParseError, ValidationError
from .exact_geometry import (
    GaussianRational,
    HomogeneousPolynomial,
    PointOrbit,
    ProjectivePoint,
    demote,
    exact_divide,
)

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([xyzi])|(.))")

Poly = Dict[Tuple[int, int, int], object]
_VARS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, var, other = m.groups()
        start = m.start(1) if num else m.start(2) if var else m.start(3)
        if num:
            out.append(_Tok("num", num, start))
        elif var:
            out.append(_Tok("var", var, start))
        elif other is not None:
            out.append(_Tok("op", other, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


def _padd(a: Poly, b: Poly, sign=1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + sign * v
        if c == 0:
            out.pop(k, None)
        else:
            out[k] = c
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            c = out.get(k, 0) + va * vb
            if c == 0:
                out.pop(k, None)
            else:
                out[k] = c
    return out


def _constant(p: Poly):
    if not p:
        return 0
    if set(p) == {(0, 0, 0)}:
        return p[(0, 0, 0)]
    return None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str, tok: _Tok = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos)

    def eat(self, text: str):
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        self.i += 1

    def expr(self) -> Poly:
        p = self.term()
        while self.tok.text in ("+", "-"):
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            p = _padd(p, self.term(), sign)
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.tok
            self.i += 1
            q = self.unary()
            if op.text == "*":
                p = _pmul(p, q)
            else:
                c = _constant(q)
                if c is None or c == 0:
                    self.fail("division is only allowed by a nonzero constant", op)
                p = {k: demote(v / c) if isinstance(v, GaussianRational) else Fraction(v) / c
                     for k, v in p.items()}
        return p

    def unary(self) -> Poly:
        if self.tok.text in ("+", "-"):
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            p = self.unary()
            return {k: sign * v for k, v in p.items()}
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.tok.text == "^":
            self.i += 1
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                self.fail("exponent must be a non-negative integer")
            n = int(self.tok.text)
            self.i += 1
            out: Poly = {(0, 0, 0): 1}
            for _ in range(n):
                out = _pmul(out, p)
            return out
        return p

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return {(0, 0, 0): Fraction(t.text)} if Fraction(t.text) != 0 else {}
        if t.kind == "var":
            self.i += 1
            if t.text == "i":
                return {(0, 0, 0): GaussianRational(0, 1)}
            return {_VARS[t.text]: 1}
        if t.text == "(":
            self.i += 1
            p = self.expr()
            self.eat(")")
            return p
        found = t.text or "end of input"
        self.fail(f"unexpected {found!r}")

    def bracket(self, parts: int) -> List[Tuple[Poly, int]]:
        self.eat("[")
        out = []
        for k in range(parts):
            start = self.tok.pos
            out.append((self.expr(), start))
            if k < parts - 1:
                self.eat(":")
        self.eat("]")
        return out


def _homogeneous(p: Poly, pos: int) -> HomogeneousPolynomial:
    degrees = {sum(k) for k in p}
    if len(degrees) > 1:
        raise ParseError("component is not homogeneous", pos)
    d = degrees.pop() if degrees else 0
    return HomogeneousPolynomial({k: demote(v) for k, v in p.items()}, d)


def _parse_components(parser: _Parser) -> List[Tuple[HomogeneousPolynomial, int]]:
    return [(_homogeneous(p, pos), pos) for p, pos in parser.bracket(3)]


@dataclass
class ParsedMap:
    map: BirationalMap
    notices: List[str]


def parse_map_with_notices(text: str) -> ParsedMap:
    parser = _Parser(text)
    comps = _parse_components(parser)
    if parser.tok.kind != "end":
        parser.fail("unexpected text after the map")
    return _build_map(comps)


def _build_map(comps) -> ParsedMap:
    notices = []
    for c, pos in comps:
        if not c.is_real():
            raise ParseError("map components must have real coefficients", pos)
    polys = [c for c, _ in comps]
    nonzero = [c for c in polys if not c.is_zero()]
    if not nonzero:
        raise ValidationError("all components are zero")
    degrees = {c.degree for c in nonzero}
    if len(degrees) > 1:
        raise ParseError("components have different degrees", comps[0][1])
    d = degrees.pop()
    polys = [c if not c.is_zero() else HomogeneousPolynomial.zero(d) for c in polys]
    g = gcd_of_components(polys)
    if g.degree > 0:
        notices.append(f"removed common factor {g}")
        polys = [exact_divide(c, g) for c in polys]
    return ParsedMap(BirationalMap(polys), notices)


def parse_map(text: str) -> BirationalMap:
    """Map from its text form; common factors are removed silently (see parse_map_with_notices)."""
    return parse_map_with_notices(text).map


def parse_maps(text: str) -> List[ParsedMap]:
    """A whitespace-separated sequence of bracketed maps."""
    parser = _Parser(text)
    out = []
    while parser.tok.kind != "end":
        out.append(_build_map(_parse_components(parser)))
    return out


def _point_from(parts) -> ProjectivePoint:
    coords = []
    for p, pos in parts:
        c = _constant(p)
        if c is None:
            raise ParseError("point coordinates must be constants", pos)
        coords.append(demote(c))
    return ProjectivePoint(*coords)


def parse_point(text: str) -> ProjectivePoint:
    parser = _Parser(text)
    p = _point_from(parser.bracket(3))
    if parser.tok.kind != "end":
        parser.fail("unexpected text after the point")
    return p


def parse_orbits(text: str) -> List[PointOrbit]:
    """Points such as ``[0:0:1] [1:i:0]``, each taken with its Galois orbit."""
    parser = _Parser(text)
    out = []
    while parser.tok.kind != "end":
        out.append(PointOrbit.of(_point_from(parser.bracket(3))))
    return out


def emit_map(f: BirationalMap) -> str:
    return str(f)

