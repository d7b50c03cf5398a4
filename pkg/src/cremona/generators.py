"""Distinguished elements of the real Cremona group and membership tests.

Conventions: the de Jonquieres group J* preserves the lines through
[0:0:1] (pencil parameter [x:y]); the group J-circ preserves the conics
through [1:+-i:0] and [0:1:+-i].
"""

from __future__ import annotations

import enum
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .birational_maps import (
    BirationalMap,
    automorphism,
    compose,
    inverse_automorphism,
    proper_base_points,
)
from .errors import (
    DegenerateConfiguration,
    InvariantViolation,
    ValidationError,
)
from .exact_geometry import (
    I,
    P1,
    P2,
    STANDARD_PENCIL,
    HomogeneousPolynomial,
    PointOrbit,
    ProjectivePoint,
    X,
    Y,
    Z,
    are_collinear,
    demote,
    inverse,
    monomials_of_degree,
    re_part,
    im_part,
    substitute_all,
)
from . import linalg


class GeneratorTag(enum.Enum):
    Automorphism = "Automorphism"
    Sigma = "Sigma"
    ThreeRealQuadratic = "ThreeRealQuadratic"
    OneRealPairQuadratic = "OneRealPairQuadratic"
    StandardQuintic = "StandardQuintic"
    DeJonquieres = "DeJonquieres"
    Other = "Other"

    def __str__(self):
        return self.value


Moebius = Tuple[object, object, object, object]


# ---------------------------------------------------------------------------
# sigma and sigma_std
# ---------------------------------------------------------------------------

def _involution(comps, name):
    m = BirationalMap(comps, name=name, check=False)
    m.inverse_hint = (m,)
    return m


_SIGMA = _involution((X * Z, Y * Z, X ** 2 + Y ** 2), "sigma")
_SIGMA_STD = _involution((Y * Z, X * Z, X * Y), "sigma_std")


def sigma() -> BirationalMap:
    """[x:y:z] -> [xz : yz : x^2 + y^2]."""
    return _SIGMA


def sigma_std() -> BirationalMap:
    """[x:y:z] -> [yz : xz : xy]."""
    return _SIGMA_STD


# ---------------------------------------------------------------------------
# linear systems with prescribed base points
# ---------------------------------------------------------------------------

def _derivatives(order: int):
    """Exponent multi-indices (a, b, c) of all partial derivatives of a given order."""
    return [(a, b, order - a - b) for a in range(order, -1, -1) for b in range(order - a, -1, -1)]


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _condition_rows(degree: int, point: ProjectivePoint, mult: int):
    """Linear conditions on the coefficients of a degree-d form to vanish to order mult."""
    monos = monomials_of_degree(degree)
    rows = []
    order = mult - 1
    for da, db, dc in _derivatives(order):
        row = []
        for (i, j, k) in monos:
            if i < da or j < db or k < dc:
                row.append(0)
                continue
            c = _falling(i, da) * _falling(j, db) * _falling(k, dc)
            v = c * (point[0] ** (i - da)) * (point[1] ** (j - db)) * (point[2] ** (k - dc))
            row.append(demote(v) if not isinstance(v, int) else v)
        rows.append(row)
    return rows


def linear_system(degree: int, conditions: Sequence[Tuple[PointOrbit, int]]) -> List[HomogeneousPolynomial]:
    """Real forms of a degree vanishing to the given orders at the given orbits.

    Returns the reduced echelon basis in graded-lex monomial order.
    """
    monos = monomials_of_degree(degree)
    rows = []
    for orbit, mult in conditions:
        rows.extend(_condition_rows(degree, orbit.representative, mult))
    real_rows = linalg.split_real_imag(rows)
    basis = linalg.nullspace(real_rows, len(monos))
    return [HomogeneousPolynomial(dict(zip(monos, vec)), degree) for vec in basis]


def conic_through(points: Sequence[ProjectivePoint]) -> HomogeneousPolynomial:
    """The unique conic through five points (coefficients in Q(i))."""
    monos = monomials_of_degree(2)
    rows = [[p[0] ** i * p[1] ** j * p[2] ** k for (i, j, k) in monos] for p in points]
    rows = [[demote(c) if not isinstance(c, int) else c for c in r] for r in rows]
    basis = linalg.nullspace(rows, 6)
    if len(basis) != 1:
        raise DegenerateConfiguration("points do not determine a unique conic")
    return HomogeneousPolynomial(dict(zip(monos, basis[0])), 2)


_DIRECTIONS = [(1, 2, 3), (2, -1, 5), (3, 1, -2), (1, -3, 1), (5, 2, 7), (-2, 3, 4), (4, 5, -1)]


def points_on_conic(conic: HomogeneousPolynomial, start: ProjectivePoint, count: int = 3):
    """Further Q(i)-points of a conic through ``start``, by intersecting lines through it."""
    grad = [conic.partial(v).evaluate(start.coords) for v in range(3)]
    out = []
    for w in _DIRECTIONS:
        qw = conic.evaluate(w)
        bw = sum(g * c for g, c in zip(grad, w))
        coords = [qw * s - bw * c for s, c in zip(start.coords, w)]
        if all(c == 0 for c in coords):
            continue
        p = ProjectivePoint(*coords)
        if p != start and p not in out:
            out.append(p)
        if len(out) >= count:
            break
    return out


def points_on_line(p: ProjectivePoint, q: ProjectivePoint, count: int = 3):
    out = []
    for lam in range(1, count + 4):
        out.append(ProjectivePoint(*[a + lam * b for a, b in zip(p.coords, q.coords)]))
    return out[:count + 3]


def image_of_contracted(f: BirationalMap, candidates) -> ProjectivePoint:
    """Evaluate f at sample points of a contracted curve until one is not a base point."""
    for p in candidates:
        img = f(p)
        if img is not None:
            return img
    raise InvariantViolation("all sample points are base points")


def real_projectivity(pairs: Sequence[Tuple[ProjectivePoint, ProjectivePoint]]):
    """Real 3x3 matrix M with M*src proportional to dst for every pair.

    Pairs with non-real points also impose the conjugate condition.  The
    pairs must form a projective frame (four points in general position).
    """
    # unknowns: the nine entries of M, then lambda_k (real part, and imaginary
    # part when the pair involves non-real points)
    slots = []
    nun = 9
    for src, dst in pairs:
        complex_pair = not (src.is_real() and dst.is_real())
        slots.append((nun, nun + 1 if complex_pair else None))
        nun += 2 if complex_pair else 1
    rows = []
    for (src, dst), (lr, li) in zip(pairs, slots):
        for r in range(3):
            row = [0] * nun
            for j in range(3):
                row[3 * r + j] = src[j]
            row[lr] = -dst[r]
            if li is not None:
                row[li] = demote(-dst[r] * I)
            rows.append(row)
    basis = linalg.nullspace(linalg.split_real_imag(rows), nun)
    if len(basis) != 1:
        raise DegenerateConfiguration("points do not form a frame for a unique real projectivity")
    vec = basis[0]
    m = [[vec[3 * r + j] for j in range(3)] for r in range(3)]
    if linalg.determinant(m) == 0:
        raise DegenerateConfiguration("projectivity is singular")
    return m


def _frame_general_position(points: Sequence[ProjectivePoint]) -> bool:
    return not any(are_collinear(a, b, c) for a, b, c in combinations(points, 3))


def express_in_span(target: HomogeneousPolynomial, basis: Sequence[HomogeneousPolynomial]):
    """Coefficients c with target = sum c_k basis_k, or None."""
    monos = sorted({m for f in list(basis) + [target] for m in f.coeffs}, reverse=True)
    rows = [[f.coeffs.get(m, 0) for f in basis] + [-target.coeffs.get(m, 0)] for m in monos]
    ns = linalg.nullspace(rows, len(basis) + 1)
    for vec in ns:
        if vec[-1] != 0:
            inv = inverse(vec[-1])
            return [demote(c * inv) for c in vec[:-1]]
    return None


def post_factor(f: BirationalMap, g: BirationalMap):
    """Automorphism matrix A with f = A o g, when the linear systems agree; else None."""
    if f.degree != g.degree:
        return None
    rows = []
    for comp in f.components:
        coeffs = express_in_span(comp, g.components)
        if coeffs is None:
            return None
        rows.append(coeffs)
    if linalg.determinant(rows) == 0:
        return None
    return rows


# ---------------------------------------------------------------------------
# quadratic maps
# ---------------------------------------------------------------------------

def _expand(orbits: Sequence[PointOrbit]):
    return [p for o in orbits for p in o.points()]


def _normalizing_automorphism(orbits: Sequence[PointOrbit]):
    """(S, B) with S in {sigma, sigma_std} and B sending the orbits to S's base points."""
    reals = [o for o in orbits if o.is_real]
    pairs = [o for o in orbits if not o.is_real]
    if len(reals) == 3 and not pairs:
        cols = [o.representative.coords for o in reals]
        s = sigma_std()
    elif len(reals) == 1 and len(pairs) == 1:
        u = [re_part(c) for c in pairs[0].representative.coords]
        v = [im_part(c) for c in pairs[0].representative.coords]
        cols = [u, v, reals[0].representative.coords]
        s = sigma()
    else:
        raise ValidationError("quadratic base points must be three real points or one real point and a pair")
    binv = [[cols[j][i] for j in range(3)] for i in range(3)]
    if linalg.determinant(binv) == 0:
        raise DegenerateConfiguration("base points are collinear")
    return s, inverse_automorphism(automorphism(binv))


def quadratic_with_base_points(orbits: Sequence[PointOrbit]) -> BirationalMap:
    """Quadratic map with exactly the given three (complex) base points.

    Components are the reduced echelon basis of the conics through them.
    """
    pts = _expand(orbits)
    if len(pts) != 3 or len(set(pts)) != 3:
        raise ValidationError("need three distinct complex points")
    if are_collinear(*pts):
        raise DegenerateConfiguration("base points are collinear")
    basis = linear_system(2, [(o, 1) for o in orbits])
    if len(basis) != 3:
        raise InvariantViolation("conic system through three points must have dimension 3")
    f = BirationalMap(basis, check=False)
    s, b = _normalizing_automorphism(orbits)
    binv = inverse_automorphism(b)
    a = post_factor(f, compose(s, b))
    if a is None:
        raise InvariantViolation("quadratic does not factor through the normal form")
    ainv = inverse_automorphism(automorphism(a))
    return f.with_inverse_hint((binv, s, ainv))


def quadratic_normal_form(f: BirationalMap):
    """(A, S, B) automorphisms/involution with f = A o S o B for a quadratic with proper base points."""
    if f.degree != 2:
        raise ValidationError("not a quadratic map")
    orbits = [o for o, _ in proper_base_points(f)]
    s, b = _normalizing_automorphism(orbits)
    a = post_factor(f, compose(s, b))
    if a is None:
        raise InvariantViolation("quadratic does not factor through its normal form")
    return automorphism(a), s, b


def quadratic_inverse(f: BirationalMap) -> BirationalMap:
    a, s, b = quadratic_normal_form(f)
    inv = compose(inverse_automorphism(b), compose(s, inverse_automorphism(a)))
    return inv.with_inverse_hint((f,))


# ---------------------------------------------------------------------------
# the conic-bundle links: standard quintics and real-point cubics
# ---------------------------------------------------------------------------

STANDARD_ORBITS = STANDARD_PENCIL.base_orbits


def _check_jcirc_data(orbit: PointOrbit):
    std = [P1, P1.conjugate(), P2, P2.conjugate()]
    pts = std + list(orbit.points())
    if len(set(pts)) != len(pts):
        raise DegenerateConfiguration("point coincides with a standard base point")
    if not _frame_general_position(pts):
        raise DegenerateConfiguration("three of the base points are collinear")


def _jcirc_link_raw(orbit: PointOrbit) -> BirationalMap:
    """Canonical-basis map of the linear system defining the link, before normalization."""
    _check_jcirc_data(orbit)
    if orbit.is_real:
        conds = [(orbit, 2)] + [(o, 1) for o in STANDARD_ORBITS]
        degree = 3
    else:
        conds = [(orbit, 2)] + [(o, 2) for o in STANDARD_ORBITS]
        degree = 5
    basis = linear_system(degree, conds)
    if len(basis) != 3:
        raise DegenerateConfiguration(
            f"linear system has dimension {len(basis)}, expected 3 (degenerate configuration)")
    return BirationalMap(basis, check=False)


def _jcirc_special_images(f: BirationalMap, orbit: PointOrbit):
    """Images of the curves that the link maps onto the standard points' images."""
    std_pts = [P1, P1.conjugate(), P2, P2.conjugate()]
    if orbit.is_real:
        r = orbit.representative
        a = image_of_contracted(f, points_on_line(r, P1))
        b = image_of_contracted(f, points_on_line(r, P2))
        fibre = conic_through(std_pts + [r])
        return a, b, image_of_contracted(f, points_on_conic(fibre, P1, 4))
    q, qb = orbit.points()
    pts6 = std_pts + [q, qb]

    def contracted_image(skip):
        others = [p for p in pts6 if p != skip]
        conic = conic_through(others)
        return image_of_contracted(f, points_on_conic(conic, others[0], 4))

    return contracted_image(P1), contracted_image(P2), contracted_image(q)


def _conic_bundle_link_plain(orbit: PointOrbit) -> BirationalMap:
    raw = _jcirc_link_raw(orbit)
    a, b, _ = _jcirc_special_images(raw, orbit)
    alpha = automorphism(real_projectivity([(a, P1), (b, P2)]))
    return compose(alpha, raw)


@lru_cache(maxsize=256)
def conic_bundle_link(orbit: PointOrbit) -> BirationalMap:
    """Element of J-circ performing the elementary link of the conic bundle at an orbit.

    A pair gives a standard quintic (double points at the three pairs); a
    real point gives a cubic with a double point there and simple points at
    the four standard points.  The map is post-composed with the real
    automorphism sending the images of the relevant contracted curves back
    to [1:i:0] and [0:1:i], which puts it in J-circ.  The inverse hint is
    the link at the image of the curve contracted onto the new base orbit,
    corrected by an automorphism.
    """
    q = _conic_bundle_link_plain(orbit)
    _, _, w = _jcirc_special_images(q, orbit)
    g = _conic_bundle_link_plain(PointOrbit.of(w))
    # g and q^-1 share their base points, hence g = beta o q^-1 with beta = g o q linear
    beta = automorphism(_linear_part_by_points(g, q))
    beta_inv = inverse_automorphism(beta)
    return q.with_inverse_hint((beta_inv, g))


_SAMPLE_POINTS = [ProjectivePoint(*p) for p in
                  [(1, 2, 3), (2, -1, 5), (3, 1, -2), (1, -3, 1), (5, 2, 7), (-2, 3, 4), (4, 5, -1),
                   (7, -2, 3), (1, 1, 5), (6, 1, 1)]]


def _linear_part_by_points(g: BirationalMap, f: BirationalMap):
    """Matrix of the automorphism g o f, determined from images of sample points.

    The caller guarantees that g o f is linear.  The frame is checked on two
    extra points.
    """
    pairs = []
    for p in _SAMPLE_POINTS:
        fp = f(p)
        if fp is None:
            continue
        gp = g(fp)
        if gp is None:
            continue
        pairs.append((p, gp))
    for start in range(len(pairs) - 5):
        frame = pairs[start:start + 4]
        if not _frame_general_position([s for s, _ in frame]) or \
                not _frame_general_position([t for _, t in frame]):
            continue
        m = real_projectivity(frame)
        ok = all(ProjectivePoint(*linalg.matvec(m, s.coords)) == t for s, t in pairs[start + 4:start + 6])
        if ok:
            return m
        raise InvariantViolation("composite is not linear on sample points")
    raise InvariantViolation("not enough sample points in general position")


def standard_quintic(q3: PointOrbit) -> BirationalMap:
    """Standard quintic in J-circ with double points at [1:+-i:0], [0:1:+-i] and q3."""
    if q3.is_real:
        raise ValidationError("the third base orbit of a standard quintic must be a conjugate pair")
    return conic_bundle_link(q3)


def jcirc_quadratic(r: PointOrbit, pair_index: int = 0) -> BirationalMap:
    """A quadratic map in J-circ with base points r and one standard pair."""
    if not r.is_real:
        raise ValidationError("jcirc_quadratic needs a real point")
    std = STANDARD_ORBITS[pair_index]
    other = STANDARD_ORBITS[1 - pair_index]
    f = quadratic_with_base_points([r, std])
    s_rep = std.representative
    a = image_of_contracted(f, points_on_line(r.representative, s_rep))
    b = f(other.representative)
    if b is None:
        raise DegenerateConfiguration("standard point is a base point")
    alpha = automorphism(real_projectivity([(a, P1), (b, P2)]))
    g = compose(alpha, f)
    return g.with_inverse_hint((quadratic_inverse(g),)) if g.inverse_hint is None else g


# ---------------------------------------------------------------------------
# membership tests
# ---------------------------------------------------------------------------

def _moebius_witness(terms: Sequence[HomogeneousPolynomial]) -> Optional[Moebius]:
    monos = sorted({m for t in terms for m in t.coeffs}, reverse=True)
    rows = [[t.coeffs.get(m, 0) for t in terms] for m in monos]
    basis = linalg.nullspace(rows, 4)
    for vec in basis:
        a, b, c, d = vec
        if a * d - b * c != 0:
            return tuple(vec)
    return None


def normalize_moebius(m: Sequence) -> Moebius:
    lead = next(c for c in m if c != 0)
    inv = inverse(lead)
    return tuple(demote(c * inv) for c in m)


def moebius_product(m1: Sequence, m2: Sequence) -> Moebius:
    a, b, c, d = m1
    e, f, g, h = m2
    return normalize_moebius((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))


@lru_cache(maxsize=1024)
def is_in_Jstar(f: BirationalMap) -> Optional[Moebius]:
    """Moebius (a,b,c,d) with [f0 : f1] = [a x + b y : c x + d y], if it exists."""
    f0, f1 = f.components[0], f.components[1]
    return _moebius_witness([-(f1 * X), -(f1 * Y), f0 * X, f0 * Y])


@lru_cache(maxsize=1024)
def is_in_Jcirc(f: BirationalMap) -> Optional[Moebius]:
    """Moebius (a,b,c,d) with [c1(f) : c2(f)] = [a c1 + b c2 : c c1 + d c2], if it exists."""
    c1, c2 = STANDARD_PENCIL.c1, STANDARD_PENCIL.c2
    C1, C2 = substitute_all([c1, c2], f.components)
    return _moebius_witness([-(C2 * c1), -(C2 * c2), C1 * c1, C1 * c2])


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _no_three_collinear(orbits) -> bool:
    return _frame_general_position(_expand(orbits))


@lru_cache(maxsize=1024)
def classify(f: BirationalMap) -> GeneratorTag:
    d = f.degree
    if d == 1:
        return GeneratorTag.Automorphism
    if d == 2:
        data = proper_base_points(f)
        if sum(o.size() for o, _ in data) == 3:
            kinds = sorted(o.kind for o, _ in data)
            if kinds == ["Real", "Real", "Real"]:
                return GeneratorTag.ThreeRealQuadratic
            if kinds == ["ConjugatePair", "Real"]:
                return GeneratorTag.OneRealPairQuadratic
    if d == 5:
        data = proper_base_points(f)
        if (len(data) == 3 and all(not o.is_real and m == 2 for o, m in data)
                and _no_three_collinear([o for o, _ in data])):
            return GeneratorTag.StandardQuintic
    if is_in_Jstar(f) is not None:
        return GeneratorTag.DeJonquieres
    return GeneratorTag.Other


def sigma_witness(f: BirationalMap):
    """Automorphisms (alpha, beta) with alpha o f o beta = sigma, for a one-real-one-pair quadratic."""
    a, s, b = quadratic_normal_form(f)
    if s is not sigma():
        raise ValidationError("map is not a quadratic with one real base point and a pair")
    alpha = inverse_automorphism(a)
    beta = inverse_automorphism(b)
    return alpha, beta


def pair_with_parameter(t, limit: int = 12) -> PointOrbit:
    """A conjugate pair in general position whose pencil parameter is t (or its conjugate)."""
    from .exact_geometry import pencil_parameter, is_real_scalar
    if is_real_scalar(t):
        raise ValidationError("a conjugate pair needs a non-real pencil parameter")
    conic = STANDARD_PENCIL.member(t)
    for p in points_on_conic(conic, P1, limit):
        if p.is_real() or p in (P1, P1.conjugate(), P2, P2.conjugate()):
            continue
        try:
            if pencil_parameter(STANDARD_PENCIL, p) != t:
                continue
            orbit = PointOrbit.of(p)
            _check_jcirc_data(orbit)
        except ValidationError:
            continue
        return orbit
    raise DegenerateConfiguration(f"no pair in general position found with parameter {t}")
