"""Sarkisov links as data, with P^2-composites wherever both ends reach P^2.

Surfaces other than P^2 carry no coordinates.  A vertex whose surface is
the blow-up of P^2 at the de Jonquieres center (F1) or P^2 itself keeps the
birational map from the reference plane to its plane model (the marking);
every other vertex carries a symbolic token.  A link's ``p2_composite`` is
the map from the model of the most recent P^2-verifiable vertex to the
model of its target, so the composite of a word is the ordered composition
of the non-empty entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .birational_maps import (
    BirationalMap,
    automorphism,
    compose,
    compose_word,
    identity_map,
    inverse_automorphism,
    proper_base_points,
)
from .errors import (
    InfinitelyNearBasePoints,
    InvariantViolation,
    UnsupportedMap,
    ValidationError,
)
from .exact_geometry import (
    P1,
    STANDARD_PENCIL,
    im_part,
    re_part,
    PointOrbit,
    ProjectivePoint,
    format_scalar,
    is_real_scalar,
    monomials_of_degree,
    pencil_parameter,
)
from .generators import (
    GeneratorTag,
    STANDARD_ORBITS,
    classify,
    is_in_Jcirc,
    is_in_Jstar,
    sigma,
    sigma_std,
)
from . import linalg

CENTER = ProjectivePoint(0, 0, 1)

SURFACES = ("P2", "Q", "C6", "C5", "C4")


def marking_key(m: BirationalMap) -> Tuple:
    """Canonical key of a marking up to post-composition with automorphisms.

    Two maps differ by an automorphism of the target exactly when their
    components span the same space of forms, so the reduced echelon basis of
    that span identifies the marking.
    """
    monos = monomials_of_degree(m.degree)
    rows = [c.coefficient_vector(monos) for c in m.components]
    return (m.degree, tuple(tuple(r) for r in linalg.rref(rows)))


@dataclass(frozen=True)
class FibrationVertex:
    """A rank r fibration S/B together with a marking.

    ``marking`` is a BirationalMap for P^2-verifiable vertices, otherwise a
    hashable symbolic token.  Equality compares surface, base, rank and the
    marking key.
    """

    surface: str
    base: str
    rank: int
    marking: object = field(compare=False)
    key: Tuple = field(default=(), compare=True)

    def __post_init__(self):
        _check_surface(self.surface, self.base, self.rank)
        if not self.key:
            token = marking_key(self.marking) if isinstance(self.marking, BirationalMap) else self.marking
            object.__setattr__(self, "key", (token,))

    @property
    def verifiable(self) -> bool:
        return isinstance(self.marking, BirationalMap)

    def label(self) -> str:
        return f"{self.surface}/{self.base}"

    def __str__(self):
        return self.label()


def _check_surface(surface: str, base: str, rank: int):
    if base not in ("pt", "P1"):
        raise ValidationError(f"base must be 'pt' or 'P1', not {base!r}")
    if rank < 1 or rank > 3:
        raise ValidationError("rank must be 1, 2 or 3")
    if surface.startswith("F"):
        n = int(surface[1:])
        if n < 0:
            raise ValidationError("Hirzebruch index must be non-negative")
        if base == "P1" and rank != 1:
            raise ValidationError("F(n) over P1 has rank 1")
        return
    if surface.startswith("X") or surface.startswith("S"):
        return
    if surface not in SURFACES:
        raise ValidationError(f"unknown surface {surface!r}")
    if surface == "P2" and (base, rank) != ("pt", 1):
        raise ValidationError("P2 is a rank 1 fibration over a point")
    if surface == "Q" and base != "pt":
        raise ValidationError("Q is fibred over a point")


def hirzebruch_index(v: FibrationVertex) -> Optional[int]:
    if v.surface.startswith("F"):
        return int(v.surface[1:])
    return None


def p2_vertex(marking: BirationalMap) -> FibrationVertex:
    return FibrationVertex("P2", "pt", 1, marking)


def f1_vertex(marking: BirationalMap, base: str = "P1") -> FibrationVertex:
    """Blow-up of the model plane at the de Jonquieres center."""
    return FibrationVertex("F1", base, 1 if base == "P1" else 2, marking)


@dataclass(frozen=True)
class Link:
    kind: str
    source: FibrationVertex
    target: FibrationVertex
    blown_up: Optional[PointOrbit] = None
    contracted: Optional[str] = None
    p2_composite: Optional[BirationalMap] = field(default=None, compare=False)
    fibre_parameter: Optional[object] = None

    def __post_init__(self):
        if self.kind not in ("I", "II", "III", "IV"):
            raise ValidationError(f"unknown link kind {self.kind!r}")
        s, t = self.source, self.target
        if self.kind == "I" and not (s.base == "pt" and t.base == "P1"):
            raise ValidationError("a type I link goes from a fibration over a point to one over P1")
        if self.kind == "III" and not (s.base == "P1" and t.base == "pt"):
            raise ValidationError("a type III link goes from a fibration over P1 to one over a point")
        if self.kind == "II" and s.base != t.base:
            raise ValidationError("a type II link keeps the base")
        if self.kind == "IV" and not (s.surface == t.surface == "F0"):
            raise ValidationError("a type IV link swaps the two rulings of F0")

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source.label(),
            "target": self.target.label(),
            "blown_up": str(self.blown_up) if self.blown_up is not None else None,
            "fibre_parameter": (format_scalar(self.fibre_parameter)
                                if self.fibre_parameter is not None else None),
        }


@dataclass(frozen=True)
class LinkWord:
    links: Tuple[Link, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        for a, b in zip(self.links, self.links[1:]):
            if a.target != b.source:
                raise ValidationError(f"links do not compose: {a.target} then {b.source}")

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)

    def __getitem__(self, i):
        return self.links[i]

    def kinds(self) -> Tuple[str, ...]:
        return tuple(l.kind for l in self.links)

    def p2_composite(self) -> BirationalMap:
        maps = [l.p2_composite for l in self.links if l.p2_composite is not None]
        return compose_word(list(reversed(maps)))

    def vertices(self) -> List[FibrationVertex]:
        if not self.links:
            return []
        return [self.links[0].source] + [l.target for l in self.links]

    def hirzebruch_indices(self) -> List[int]:
        return [hirzebruch_index(v) for v in self.vertices() if hirzebruch_index(v) is not None]

    def to_records(self) -> List[dict]:
        return [l.to_record() for l in self.links]


def parity_rule_holds(word: LinkWord) -> bool:
    """Hirzebruch indices change by +-1 at a real point and by 0 or +-2 at a pair."""
    for l in word.links:
        a, b = hirzebruch_index(l.source), hirzebruch_index(l.target)
        if a is None or b is None or l.kind != "II":
            continue
        step = abs(a - b)
        if l.blown_up is None:
            return False
        if l.blown_up.is_real and step != 1:
            return False
        if not l.blown_up.is_real and step not in (0, 2):
            return False
    return True


def elementary_target_index(n: int, on_negative_section: bool) -> int:
    """Index after an elementary transformation of F(n) at one real point."""
    if n == 0:
        return 1
    return n + 1 if on_negative_section else n - 1


# ---------------------------------------------------------------------------
# sigma through the quadric
# ---------------------------------------------------------------------------

def sigma_link_factorization() -> LinkWord:
    """sigma = phi2 o phi1 with phi1: P2 -> Q and phi2: Q -> P2, both of type II."""
    s = sigma()
    start = p2_vertex(identity_map())
    end = p2_vertex(s)
    quadric = FibrationVertex("Q", "pt", 1, ("Q", marking_key(identity_map()), "pair [1:i:0]"))
    pair = PointOrbit("ConjugatePair", P1)
    phi1 = Link("II", start, quadric, blown_up=pair, contracted="line z = 0 through the pair")
    phi2 = Link("II", quadric, end, blown_up=PointOrbit("Real", CENTER),
                contracted="the two conjugate rulings through the point", p2_composite=s)
    return LinkWord((phi1, phi2))


# ---------------------------------------------------------------------------
# three real base points
# ---------------------------------------------------------------------------

def three_real_quadratic_path(f: BirationalMap) -> LinkWord:
    """P2 -> F1 -> F0 -> F1 -> P2 realizing a quadratic map with three real base points."""
    if f.degree != 2 or classify(f) is not GeneratorTag.ThreeRealQuadratic:
        raise ValidationError("map is not a quadratic map with three real base points")
    p1, p2, p3 = [o for o, _ in proper_base_points(f)]
    ref = identity_map()
    v0 = p2_vertex(ref)
    v1 = f1_vertex(ref)
    v2 = FibrationVertex("F0", "P1", 1, ("F0", marking_key(ref), str(p1), str(p2)))
    v3 = f1_vertex(f)
    v4 = p2_vertex(f)
    return LinkWord((
        Link("I", v0, v1, blown_up=p1, p2_composite=ref),
        Link("II", v1, v2, blown_up=p2, contracted=f"line through {p1.representative} and {p2.representative}"),
        Link("II", v2, v3, blown_up=p3, contracted=f"line through {p1.representative} and {p3.representative}",
             p2_composite=f),
        Link("III", v3, v4, contracted=f"line through {p2.representative} and {p3.representative}",
             p2_composite=identity_map()),
    ))


# ---------------------------------------------------------------------------
# de Jonquieres maps
# ---------------------------------------------------------------------------

def jstar_quadratic(first: PointOrbit, second: Optional[PointOrbit] = None) -> BirationalMap:
    """Quadratic map in J* with base points [0:0:1] and the given orbits.

    A pair s = u + i v gives sigma o B with B^-1 = [u | v | c]; two real
    points r1, r2 give sigma_std o B with B^-1 = [r1 | r2 | c].
    """
    c = CENTER.coords
    if not first.is_real:
        if second is not None:
            raise ValidationError("a pair already supplies two base points")
        rep = first.representative
        cols = [[re_part(x) for x in rep.coords], [im_part(x) for x in rep.coords], c]
        s = sigma()
    else:
        if second is None or not second.is_real:
            raise ValidationError("a real base point must be paired with a second real point")
        cols = [first.representative.coords, second.representative.coords, c]
        s = sigma_std()
    binv_rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    if linalg.determinant(binv_rows) == 0:
        raise ValidationError("base points are collinear with the center")
    binv = automorphism(binv_rows)
    b = inverse_automorphism(binv)
    q = compose(s, b)
    return q.with_inverse_hint((binv, s))


def _simple_orbits(g: BirationalMap):
    data = proper_base_points(g)
    d = g.degree
    total = sum(o.size() * m for o, m in data)
    if total != 3 * (d - 1):
        raise InfinitelyNearBasePoints("de Jonquieres map has infinitely near base points")
    center = [(o, m) for o, m in data if o.is_real and o.representative == CENTER]
    if not center or center[0][1] != d - 1:
        raise InvariantViolation("center [0:0:1] does not have multiplicity d - 1")
    rest = [(o, m) for o, m in data if not (o.is_real and o.representative == CENTER)]
    if any(m != 1 for _, m in rest):
        raise UnsupportedMap("simple base points expected away from the center")
    rest.sort(key=lambda om: (-om[1], om[0].sort_key()))
    return [o for o, _ in rest]


def _has_only_proper_base_points(g: BirationalMap) -> bool:
    if g.degree == 1:
        return True
    return sum(o.size() * m for o, m in proper_base_points(g)) == 3 * (g.degree - 1)


def _elementary_step(g: BirationalMap):
    """First quadratic q in J* (a pair, or two real points) with g o q^-1 of degree one less
    and still without infinitely near base points."""
    orbits = _simple_orbits(g)
    reals = [o for o in orbits if o.is_real]
    candidates = [(o, None) for o in orbits if not o.is_real]
    candidates += [(a, b) for i, a in enumerate(reals) for b in reals[i + 1:]]
    for first, second in candidates:
        try:
            q = jstar_quadratic(first, second)
        except ValidationError:
            continue
        g_next = compose(g, compose_word(q.inverse_hint))
        if g_next.degree == g.degree - 1 and _has_only_proper_base_points(g_next):
            return first, second, q, g_next
    raise UnsupportedMap("no elementary step keeps the base points proper")


def decompose_de_jonquieres(f: BirationalMap, max_steps: int = 64) -> LinkWord:
    """Factor a J* map into a type I link, elementary links between Hirzebruch surfaces, and a type III link."""
    if is_in_Jstar(f) is None:
        raise ValidationError("map does not preserve the lines through [0:0:1]")
    if f.degree == 1 and f == identity_map():
        return LinkWord(())
    ref = identity_map()
    links: List[Link] = []
    model = ref
    current = f1_vertex(model)
    links.append(Link("I", p2_vertex(model), current, blown_up=PointOrbit("Real", CENTER),
                      p2_composite=ref))
    g = f
    steps = 0
    while g.degree > 1:
        steps += 1
        if steps > max_steps:
            raise InvariantViolation("de Jonquieres decomposition did not terminate")
        first, second, q, g_next = _elementary_step(g)
        new_model = compose(q, model)
        nxt = f1_vertex(new_model)
        if first.is_real:
            mid = FibrationVertex("F0", "P1", 1, ("F0", marking_key(model), str(first)))
            links.append(Link("II", current, mid, blown_up=first, contracted="fibre through the point"))
            links.append(Link("II", mid, nxt, blown_up=second, contracted="fibre through the point",
                              p2_composite=q))
        else:
            links.append(Link("II", current, nxt, blown_up=first, contracted="fibres through the pair",
                              p2_composite=q))
        g, model, current = g_next, new_model, nxt
    final_model = compose(g, model)
    links.append(Link("III", current, p2_vertex(final_model), contracted="exceptional curve over the center",
                      p2_composite=g))
    return LinkWord(tuple(links))


# ---------------------------------------------------------------------------
# conic bundle links
# ---------------------------------------------------------------------------

def c6_vertex(marking: BirationalMap) -> FibrationVertex:
    return FibrationVertex("C6", "P1", 1, ("C6", marking_key(marking)))


def third_pair(q: BirationalMap) -> PointOrbit:
    others = [o for o, _ in proper_base_points(q) if o not in STANDARD_ORBITS]
    if len(others) != 1:
        raise ValidationError("quintic is not adapted to the standard pencil")
    return others[0]


def quintic_to_c6_link(q: BirationalMap) -> Link:
    """The C6 -> C6 type II link conjugate to a standard quintic in J-circ."""
    if classify(q) is not GeneratorTag.StandardQuintic or is_in_Jcirc(q) is None:
        raise ValidationError("map is not a standard quintic in J-circ")
    orbit = third_pair(q)
    t = pencil_parameter(STANDARD_PENCIL, orbit.representative)
    return Link("II", c6_vertex(identity_map()), c6_vertex(q), blown_up=orbit,
                contracted="the two fibres through the pair", p2_composite=q, fibre_parameter=t)


def conic_bundle_link_data(f: BirationalMap, orbit: PointOrbit, source_marking: BirationalMap) -> Link:
    """A C6 type II link at an orbit, realized in P^2 by the J-circ map f."""
    if is_in_Jcirc(f) is None:
        raise ValidationError("map does not preserve the standard pencil")
    t = pencil_parameter(STANDARD_PENCIL, orbit.representative)
    if orbit.is_real and not is_real_scalar(t):
        raise InvariantViolation("real point with non-real fibre parameter")
    return Link("II", c6_vertex(source_marking), c6_vertex(compose(f, source_marking)),
                blown_up=orbit, contracted="fibre(s) through the orbit", p2_composite=f,
                fibre_parameter=t)


def ruling_swap(marking_token) -> Link:
    v = FibrationVertex("F0", "P1", 1, ("F0", marking_token, "ruling 1"))
    w = FibrationVertex("F0", "P1", 1, ("F0", marking_token, "ruling 2"))
    return Link("IV", v, w)
