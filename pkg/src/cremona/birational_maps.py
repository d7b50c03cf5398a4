"""Birational self-maps of the real projective plane as coprime triples of real forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, QQ, resultant

from .errors import (
    BasePointOutsideField,
    InfinitelyNearBasePoints,
    InvariantViolation,
    UnsupportedMap,
    ValidationError,
)
from .exact_geometry import (
    GENS,
    GaussianRational,
    HomogeneousPolynomial,
    PointOrbit,
    ProjectivePoint,
    X,
    Y,
    Z,
    demote,
    exact_divide,
    factor_gaussian,
    factor_rational,
    inverse,
    jacobian_determinant,
    poly_gcd,
    remainder,
    scalar,
    substitute_all,
    to_sympy,
)
from . import linalg


class BirationalMap:
    """A map [f0 : f1 : f2] with coprime real components of one degree.

    Components are normalized so that the graded-lex leading coefficient of
    the first nonzero component is 1; equality of maps is then equality of
    component tuples.  ``inverse_hint`` is a word (l1, ..., ln) of maps with
    l1 o ... o ln equal to the inverse.
    """

    __slots__ = ("components", "inverse_hint", "name", "_hash")

    def __init__(self, components: Sequence[HomogeneousPolynomial], inverse_hint=None,
                 name: str = None, check: bool = True):
        comps = tuple(components)
        if len(comps) != 3:
            raise ValidationError("a plane map needs three components")
        if check:
            degs = {c.degree for c in comps if not c.is_zero()}
            if len(degs) != 1:
                raise ValidationError("components must be nonzero forms of one common degree")
            if not all(c.is_real() for c in comps):
                raise ValidationError("components must have real coefficients")
            if min(degs) < 1:
                raise ValidationError("components must have positive degree")
            if jacobian_determinant(comps).is_zero():
                raise ValidationError("not dominant: Jacobian determinant is identically zero")
            if min(degs) > 1 and gcd_of_components(comps).degree > 0:
                raise ValidationError("components share a common factor")
        self.components = _normalize(comps)
        self.inverse_hint = tuple(inverse_hint) if inverse_hint is not None else None
        self.name = name
        self._hash = None

    @property
    def degree(self) -> int:
        return next(c.degree for c in self.components if not c.is_zero())

    def with_inverse_hint(self, hint) -> "BirationalMap":
        return BirationalMap(self.components, inverse_hint=hint, name=self.name, check=False)

    def with_name(self, name: str) -> "BirationalMap":
        return BirationalMap(self.components, inverse_hint=self.inverse_hint, name=name, check=False)

    def __call__(self, point: ProjectivePoint) -> Optional[ProjectivePoint]:
        """Image of a point, or None when the point is a base point."""
        vals = [c.evaluate(point.coords) for c in self.components]
        if all(v == 0 for v in vals):
            return None
        return ProjectivePoint(*vals)

    def matrix(self) -> List[list]:
        if self.degree != 1:
            raise ValidationError("only degree-1 maps have a matrix")
        return [[c.coeffs.get(m, 0) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
                for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, BirationalMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __repr__(self):
        label = f"{self.name}=" if self.name else ""
        return f"BirationalMap({label}{self})"

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.components) + "]"


def _normalize(comps):
    lead = next(c for c in comps if not c.is_zero()).leading_coefficient()
    if lead == 1:
        return comps
    inv = inverse(lead)
    return tuple(c.scale(inv) for c in comps)


_COMBOS = ((1, 3, 7), (2, -5, 11), (-3, 13, 4), (5, 1, -9))


def gcd_of_components(comps: Sequence[HomogeneousPolynomial]) -> HomogeneousPolynomial:
    """gcd of three forms using a combination trick verified by exact division."""
    nz = [c for c in comps if not c.is_zero()]
    if len(nz) == 1:
        return nz[0].monic()
    if len(nz) == 2:
        return poly_gcd(nz[0], nz[1])
    f0, f1, f2 = nz
    for a, b, _ in _COMBOS:
        h = poly_gcd(f0, f1.scale(a) + f2.scale(b))
        if h.degree == 0:
            return h
        try:
            exact_divide(f1, h)
            return h
        except ValidationError:
            continue
    return poly_gcd(poly_gcd(f0, f1), f2)


def identity_map() -> BirationalMap:
    return BirationalMap((X, Y, Z), inverse_hint=(), name="id", check=False)


def automorphism(matrix: Sequence[Sequence], name: str = None) -> BirationalMap:
    """The linear map [x:y:z] -> matrix * (x, y, z)."""
    rows = [[scalar(c) for c in row] for row in matrix]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValidationError("automorphism needs a 3x3 matrix")
    if any(isinstance(c, GaussianRational) for r in rows for c in r):
        raise ValidationError("automorphism matrix must be real")
    if linalg.determinant(rows) == 0:
        raise ValidationError("automorphism matrix is singular")
    comps = [HomogeneousPolynomial({(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}, 1) for r in rows]
    inv = linalg.inverse_matrix(rows)
    inv_comps = [HomogeneousPolynomial({(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}, 1) for r in inv]
    inv_map = BirationalMap(inv_comps, check=False)
    fwd = BirationalMap(comps, inverse_hint=(inv_map,), name=name, check=False)
    return fwd


def inverse_automorphism(a: BirationalMap) -> BirationalMap:
    return automorphism(linalg.inverse_matrix(a.matrix()))


def compose(g: BirationalMap, f: BirationalMap) -> BirationalMap:
    """g o f: substitute f's components into g and remove the common factor."""
    raw = substitute_all(g.components, f.components)
    if g.degree > 1 and f.degree > 1:
        h = gcd_of_components(raw)
        if h.degree > 0:
            raw = [exact_divide(c, h) for c in raw]
    hint = None
    if g.inverse_hint is not None and f.inverse_hint is not None:
        hint = tuple(f.inverse_hint) + tuple(g.inverse_hint)
    return BirationalMap(raw, inverse_hint=hint, check=False)


def compose_word(word: Sequence[BirationalMap]) -> BirationalMap:
    """l1 o l2 o ... o ln; the empty word is the identity."""
    result = identity_map()
    for letter in reversed(list(word)):
        result = compose(letter, result)
    return result


def raw_composition(g: BirationalMap, f: BirationalMap) -> Tuple[HomogeneousPolynomial, ...]:
    """Components of g o f before removing common factors."""
    return tuple(substitute_all(g.components, f.components))


def inverse_of(f: BirationalMap) -> BirationalMap:
    """Evaluate the inverse hint; maps without hints are rejected."""
    if f.degree == 1:
        return inverse_automorphism(f)
    if f.inverse_hint is None:
        raise UnsupportedMap("map carries no inverse hint")
    inv = compose_word(f.inverse_hint)
    return BirationalMap(inv.components, inverse_hint=(f,), check=False)


def equals(f: BirationalMap, g: BirationalMap) -> bool:
    return f.degree == g.degree and f.components == g.components


def proportional(a: Sequence[HomogeneousPolynomial], b: Sequence[HomogeneousPolynomial]) -> bool:
    """True when two triples of forms define the same rational map (cross products vanish)."""
    for i in range(3):
        for j in range(i + 1, 3):
            if a[i].is_zero() and a[j].is_zero() and b[i].is_zero() and b[j].is_zero():
                continue
            if not (a[i] * b[j] - a[j] * b[i]).is_zero():
                return False
    return True


def is_identity_raw(comps: Sequence[HomogeneousPolynomial]) -> bool:
    return proportional(comps, (X, Y, Z))


def is_automorphism(f: BirationalMap) -> bool:
    return f.degree == 1 and linalg.determinant(f.matrix()) != 0


def is_identity(f: BirationalMap) -> bool:
    return f.degree == 1 and f.components == (X, Y, Z)


# ---------------------------------------------------------------------------
# base points
# ---------------------------------------------------------------------------

def order_at(f: HomogeneousPolynomial, p: ProjectivePoint) -> int:
    """Multiplicity of the curve f = 0 at p (0 when f(p) != 0)."""
    layer = {f}
    for k in range(f.degree + 1):
        if any(g.evaluate(p.coords) != 0 for g in layer):
            return k
        nxt = set()
        for g in layer:
            for v in range(3):
                d = g.partial(v)
                if not d.is_zero():
                    nxt.add(d)
        layer = nxt
        if not layer:
            return k + 1
    return f.degree


def multiplicity(f: BirationalMap, p: ProjectivePoint) -> int:
    return min(order_at(c, p) for c in f.components if not c.is_zero())


def _univariate_roots_gaussian(p: HomogeneousPolynomial):
    """Roots in Q(i) of a binary form in (x, y) as projective points [x:y:0]."""
    pts = []
    for fac, _ in factor_gaussian(p):
        if fac.degree == 0:
            continue
        if fac.degree > 1:
            raise BasePointOutsideField(f"base points on factor {fac} are not Gaussian rational")
        a = fac.coeffs.get((1, 0, 0), 0)
        b = fac.coeffs.get((0, 1, 0), 0)
        pts.append(ProjectivePoint(-b, a, 0) if (a or b) else None)
    return [q for q in pts if q is not None]


def _roots_of_rational_factor(poly_x: Poly):
    """Roots in Q(i) of an irreducible univariate polynomial over Q, or raise."""
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in poly_x.all_coeffs()]
    deg = len(coeffs) - 1
    if deg == 1:
        return [demote(-coeffs[1] / coeffs[0])]
    if deg == 2:
        a, b, c = coeffs
        disc = b * b - 4 * a * c
        if disc < 0:
            root = _rational_sqrt(-disc)
            if root is not None:
                re = -b / (2 * a)
                im = root / (2 * a)
                return [demote(GaussianRational(re, im)), demote(GaussianRational(re, -im))]
    return None


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    from math import isqrt
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def common_zeros(comps: Sequence[HomogeneousPolynomial]) -> List[ProjectivePoint]:
    """All common zeros over Q(i) of three real forms with finitely many common zeros."""
    comps = [c for c in comps if not c.is_zero()]
    points: List[ProjectivePoint] = []
    # points on the line z = 0
    at_inf = [HomogeneousPolynomial({e: v for e, v in c.coeffs.items() if e[2] == 0}, c.degree)
              for c in comps]
    nz = [c for c in at_inf if not c.is_zero()]
    if not nz:
        raise InvariantViolation("components vanish on the whole line z = 0")
    g = nz[0]
    for c in nz[1:]:
        g = poly_gcd(g, c)
    if g.degree > 0:
        points.extend(_univariate_roots_gaussian(g))
    # affine part z = 1 via resultants in y
    d = comps[0].degree
    x, y, z = GENS
    ycoef = [c.coeffs.get((0, d, 0), 0) for c in comps] + [0] * (3 - len(comps))
    full = list(comps) + [HomogeneousPolynomial.zero(d)] * (3 - len(comps))
    lead = None
    for a, b, c in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]:
        if a * ycoef[0] + b * ycoef[1] + c * ycoef[2] != 0:
            lead = (a, b, c)
            break
    shear = 0
    if lead is None:
        # [0:1:0] is a common zero; shear x -> x + k*y to move it off the y-axis direction
        for k in range(1, 20):
            sheared = substitute_all(full, (X + Y.scale(k), Y, Z))
            yc = [c.coeffs.get((0, d, 0), 0) for c in sheared]
            if any(yc):
                shear, full = k, sheared
                ycoef = yc
                lead = next((t for t in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
                             if t[0] * yc[0] + t[1] * yc[1] + t[2] * yc[2] != 0))
                break
    polys = [to_sympy(c, QQ).as_expr().subs(z, 1) for c in full]
    e_lead = sum(k * p for k, p in zip(lead, polys))
    R = None
    for a, b, c in _COMBOS[:3]:
        other = a * polys[0] + b * polys[1] + c * polys[2]
        r = Poly(resultant(e_lead, other, y), x, domain=QQ)
        R = r if R is None else R.gcd(r)
        if R.degree() <= 0:
            break
    affine_pts = []
    if R is not None and not R.is_zero and R.degree() > 0:
        for fac, _ in R.factor_list()[1]:
            roots = _roots_of_rational_factor(fac)
            if roots is None:
                raise BasePointOutsideField(f"base points with x-coordinate a root of {fac.as_expr()}")
            for x0 in roots:
                affine_pts.extend(_fibre_points(full, x0))
    for p in affine_pts:
        if shear:
            # undo x' = x + k*y: original x = x' + k*y
            p = ProjectivePoint(p[0] + shear * p[1], p[1], p[2])
        points.append(p)
    # verify and deduplicate
    out = []
    for p in points:
        if any(c.evaluate(p.coords) != 0 for c in comps):
            raise InvariantViolation(f"computed base point {p} is not a common zero")
        if p not in out:
            out.append(p)
    return out


def _fibre_points(comps, x0) -> List[ProjectivePoint]:
    """Common zeros with x = x0, z = 1, found as roots of a univariate gcd in y."""
    g = None
    for c in comps:
        acc = {}
        for (i, j, _), v in c.coeffs.items():
            acc[j] = acc.get(j, 0) + v * (x0 ** i)
        acc = {j: demote(v) for j, v in acc.items() if v}
        if not acc:
            continue
        top = max(acc)
        dense = [acc.get(j, 0) for j in range(top, -1, -1)]
        g = dense if g is None else _ugcd(g, dense)
    if g is None:
        raise InvariantViolation("positive-dimensional common zero locus")
    return [ProjectivePoint(x0, y0, 1) for y0 in _univariate_roots(g)]


def _ugcd(a, b):
    """Univariate gcd over Q(i) by the Euclidean algorithm, monic result."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _urem(a, b)
    if not a:
        return a
    lead = inverse(a[0])
    return [demote(c * lead) for c in a]


def _trim(p):
    p = list(p or [])
    while p and p[0] == 0:
        p.pop(0)
    return p


def _urem(a, b):
    a = list(a)
    inv = inverse(b[0])
    while len(a) >= len(b) and a:
        q = a[0] * inv
        for i in range(len(b)):
            a[i] = demote(a[i] - q * b[i])
        a.pop(0)
        a = _trim(a)
    return a


def _univariate_roots(p):
    """Roots in Q(i) of a univariate polynomial over Q(i) (coefficients highest first)."""
    p = _trim(p)
    if len(p) <= 1:
        return []
    deg = len(p) - 1
    form = HomogeneousPolynomial({(deg - n, n, 0): c for n, c in enumerate(p)}, deg)
    roots = []
    for fac, _ in factor_gaussian(form):
        if fac.degree == 0:
            continue
        if fac.degree > 1:
            raise BasePointOutsideField(f"base point coordinate is a root of {fac}")
        a = fac.coeffs.get((1, 0, 0), 0)
        b = fac.coeffs.get((0, 1, 0), 0)
        if a == 0:
            continue  # root at infinity of the y-line, not an affine value
        roots.append(demote(-b * inverse(a)))
    return roots


def proper_base_points(f: BirationalMap, max_degree: int = 5):
    """Proper base points grouped into orbits, each with its multiplicity."""
    if f.degree == 1:
        return []
    if f.degree > max_degree:
        raise UnsupportedMap(f"base point analysis supports degree <= {max_degree}")
    return list(_proper_base_points_cached(f))


@lru_cache(maxsize=2048)
def _proper_base_points_cached(f: BirationalMap):
    pts = common_zeros(f.components)
    seen = set()
    out = []
    for p in sorted(pts):
        if p in seen:
            continue
        orbit = PointOrbit.of(p)
        for q in orbit.points():
            seen.add(q)
            if q not in pts:
                raise InvariantViolation(f"base locus not Galois stable at {q}")
        out.append((orbit, multiplicity(f, orbit.representative)))
    out.sort(key=lambda om: (-om[1], om[0].sort_key()))
    return tuple(out)


def base_points(f: BirationalMap, max_degree: int = 5) -> List[PointOrbit]:
    """Proper base points as Galois orbits; raises if some are infinitely near."""
    data = proper_base_points(f, max_degree)
    d = f.degree
    total = sum(o.size() * m for o, m in data)
    if d > 1 and total != 3 * (d - 1):
        raise InfinitelyNearBasePoints(
            f"proper base points carry multiplicity {total}, expected {3 * (d - 1)}: "
            "the map has infinitely near base points")
    return [o for o, _ in data]


# ---------------------------------------------------------------------------
# contracted curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContractedCurve:
    """An irreducible real curve contracted by a map, with its image orbit.

    ``branches`` pairs each component over Q(i) with the point it maps to.
    """

    curve: HomogeneousPolynomial
    image: PointOrbit
    branches: Tuple[Tuple[HomogeneousPolynomial, ProjectivePoint], ...] = field(default=())

    def __iter__(self):
        return iter((self.curve, self.image))


def image_of_curve(f: BirationalMap, curve: HomogeneousPolynomial) -> ProjectivePoint:
    """The point to which an irreducible curve (over Q(i)) is contracted."""
    rems = [remainder(c, curve) for c in f.components]
    j = next((k for k, r in enumerate(rems) if not r.is_zero()), None)
    if j is None:
        raise InvariantViolation(f"all components vanish on {curve}")
    ref = rems[j]
    mono = ref.leading_monomial()
    ratios = []
    for r in rems:
        c = r.coeffs.get(mono, 0)
        lam = demote(c * inverse(ref.coeffs[mono]))
        if not (r - ref.scale(lam)).is_zero():
            raise InvariantViolation(f"{curve} is not contracted by {f}")
        ratios.append(lam)
    return ProjectivePoint(*ratios)


def contracted_curves(f: BirationalMap) -> List[ContractedCurve]:
    if f.degree == 1:
        return []
    jac = jacobian_determinant(f.components)
    out = []
    for fac, _ in factor_rational(jac):
        if fac.degree == 0:
            continue
        branches = []
        for gfac, _ in factor_gaussian(fac):
            if gfac.degree == 0:
                continue
            branches.append((gfac, image_of_curve(f, gfac)))
        if len(branches) == 1:
            img = branches[0][1]
            if not img.is_real():
                raise InvariantViolation(f"real curve {fac} maps to a non-real point")
            orbit = PointOrbit("Real", img)
        else:
            orbit = PointOrbit.of(branches[0][1])
            if len(branches) != 2 or orbit.is_real:
                raise BasePointOutsideField(f"contracted curve {fac} has unexpected image structure")
        out.append(ContractedCurve(fac, orbit, tuple(branches)))
    out.sort(key=lambda c: c.curve.sort_key())
    return out
