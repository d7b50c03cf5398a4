"""Elementary discs of the square complex: schema table, concrete instances, relations.

A disc instance is built from two routes of links that leave a common
start vertex and meet again at a closing vertex.  The boundary word runs
backwards along the second route and forwards along the first, so its
P^2-composite is the automorphism alpha with route1 = alpha o route2.
The relation holds exactly when that alpha exists.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .birational_maps import (
    BirationalMap,
    automorphism,
    compose,
    identity_map,
    inverse_automorphism,
    inverse_of,
    is_automorphism,
)
from .errors import (
    DegenerateConfiguration,
    InvariantViolation,
    SymbolicOnly,
    ValidationError,
)
from .exact_geometry import (
    STANDARD_PENCIL,
    PointOrbit,
    ProjectivePoint,
    are_collinear,
    pencil_parameter,
)
from .linalg import determinant
from .generators import (
    _check_jcirc_data,
    conic_bundle_link,
    post_factor,
    _normalizing_automorphism,
)
from .sarkisov_links import (
    CENTER,
    FibrationVertex,
    Link,
    LinkWord,
    hirzebruch_index,
    jstar_quadratic,
    p2_vertex,
)

SINGULAR_FIBRES = (0, 4)


# ---------------------------------------------------------------------------
# schema table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexTemplate:
    surface: str
    base: str
    rank: int
    marks: Tuple[Optional[int], Optional[int]] = (None, None)
    orbits: Tuple[Optional[str], Optional[str]] = (None, None)

    def label(self) -> str:
        return f"{self.surface}/{self.base}"


@dataclass(frozen=True)
class DiscSchema:
    id: str
    vertex_cycle: Tuple[VertexTemplate, ...]
    center: VertexTemplate
    data_kinds: Tuple[str, ...]
    note: str = ""

    @property
    def arrow_marks(self) -> Tuple[Optional[int], ...]:
        return tuple(m for v in self.vertex_cycle if v.rank == 2 for m in v.marks)

    def labelled_marks(self) -> List[int]:
        return [m for m in self.arrow_marks if m is not None]


@lru_cache(maxsize=1)
def _load_table() -> Dict[str, dict]:
    text = resources.files("cremona").joinpath("data/disc_schemas.json").read_text()
    return json.loads(text)


def _template(entry: dict, rank: int) -> VertexTemplate:
    return VertexTemplate(entry["surface"], entry["base"], rank,
                          tuple(entry.get("marks", (None, None))),
                          tuple(entry.get("orbits", (None, None))))


def schema_catalog() -> List[DiscSchema]:
    out = []
    for sid in ("D1", "D2", "D3", "D4", "D5", "D6"):
        entry = _load_table()[sid]
        cycle = tuple(_template(e, 2 if "marks" in e else 1) for e in entry["cycle"])
        c = entry["center"]
        out.append(DiscSchema(sid, cycle, VertexTemplate(c["surface"], c["base"], c["rank"]),
                              tuple(entry["data"]), entry["note"]))
    return out


def schema(sid: str) -> DiscSchema:
    for s in schema_catalog():
        if s.id == sid:
            return s
    raise ValidationError(f"unknown disc schema {sid!r}; expected D1..D6")


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One link of a route, with the rank 2 vertex it passes through and its two arrow marks."""

    link: Link
    middle: FibrationVertex
    marks: Tuple[Optional[int], Optional[int]]


@dataclass(frozen=True)
class DiscInstance:
    schema: DiscSchema
    data: Tuple[PointOrbit, ...]
    center: FibrationVertex
    boundary: LinkWord
    middles: Tuple[FibrationVertex, ...]
    marks: Tuple[Tuple[Optional[int], Optional[int]], ...]
    concrete: bool
    route1: Optional[BirationalMap] = field(default=None, compare=False)
    route2: Optional[BirationalMap] = field(default=None, compare=False)

    def cycle(self) -> List[FibrationVertex]:
        """Boundary vertices in order, rank 1 and rank 2 alternating, closing vertex not repeated."""
        out = []
        for l, m in zip(self.boundary.links, self.middles):
            out.extend([l.source, m])
        return out

    def vertex_set(self):
        return set(self.cycle())

    def to_record(self) -> dict:
        return {
            "schema": self.schema.id,
            "data": [str(o) for o in self.data],
            "concrete": self.concrete,
            "boundary": self.boundary.to_records(),
        }


def _model_id(m: BirationalMap) -> Tuple[str, ...]:
    return tuple(str(c) for c in m.components)


def _blowup(surface: str, base: str, rank: int, model: BirationalMap, orbits=(), tag: str = "") -> FibrationVertex:
    """A vertex described as a blow-up of the plane model of ``model`` at the given orbits."""
    token = ("blowup", tag, _model_id(model), frozenset(str(o) for o in orbits))
    return FibrationVertex(surface, base, rank, token)


def _kind(source: FibrationVertex, target: FibrationVertex) -> str:
    if source.base == "pt" and target.base == "P1":
        return "I"
    if source.base == "P1" and target.base == "pt":
        return "III"
    return "II"


def _step(source, middle, target, marks, blown_up=None, p2=None, t=None, contracted=None) -> Step:
    link = Link(_kind(source, target), source, target, blown_up=blown_up, contracted=contracted,
                p2_composite=p2, fibre_parameter=t)
    return Step(link, middle, marks)


_REVERSE_KIND = {"I": "III", "III": "I", "II": "II", "IV": "IV"}


def _reverse_route(steps: Sequence[Step]) -> List[Step]:
    """Traverse a route backwards; each P^2 map is inverted and moved to the link arriving at its start."""
    carriers = [i for i, s in enumerate(steps) if s.link.p2_composite is not None]
    inverse_at: Dict[int, BirationalMap] = {}
    prev = -1
    for i in carriers:
        inverse_at[prev + 1] = inverse_of(steps[i].link.p2_composite)
        prev = i
    out = []
    for i in reversed(range(len(steps))):
        s = steps[i]
        l = s.link
        rl = Link(_REVERSE_KIND[l.kind], l.target, l.source, blown_up=None,
                  contracted=f"reverse of the blow-up of {l.blown_up}" if l.blown_up else None,
                  p2_composite=inverse_at.get(i), fibre_parameter=None)
        out.append(Step(rl, s.middle, (s.marks[1], s.marks[0])))
    return out


def _image_orbit(f: BirationalMap, o: PointOrbit) -> PointOrbit:
    p = f(o.representative)
    if p is None:
        raise DegenerateConfiguration(f"{o} is a base point of an intermediate link")
    return PointOrbit.of(p)


def _route_map(steps: Sequence[Step]) -> BirationalMap:
    return LinkWord(tuple(s.link for s in steps)).p2_composite()


def _mark(o: PointOrbit) -> int:
    return 1 if o.is_real else 2


def _expect(data: Sequence[PointOrbit], count: int) -> Tuple[PointOrbit, ...]:
    data = tuple(data)
    if len(data) != count:
        raise ValidationError(f"schema expects {count} point orbits, got {len(data)}")
    for o in data:
        if not isinstance(o, PointOrbit):
            raise ValidationError("disc data must be point orbits")
    return data


def _moving_to_center(r: ProjectivePoint) -> BirationalMap:
    """A real automorphism sending r to [0:0:1]."""
    for cols in (((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))):
        rows = [[cols[0][i], cols[1][i], r.coords[i]] for i in range(3)]
        if determinant(rows) != 0:
            return inverse_automorphism(automorphism(rows))
    raise InvariantViolation("point has no complementary coordinate frame")


# ---- D1: a real point and a pair ----------------------------------------------

def _build_d1(data, m):
    reals = [o for o in data if o.is_real]
    pairs = [o for o in data if not o.is_real]
    if len(reals) != 1 or len(pairs) != 1:
        raise ValidationError("D1 needs one real point and one conjugate pair")
    r, s = reals[0], pairs[0]
    sp, spb = s.points()
    if are_collinear(r.representative, sp, spb):
        raise DegenerateConfiguration("the real point lies on the line through the pair")
    S = p2_vertex(m)
    # the quadric route realizes the normal form sigma o B, B^-1 = [Re s | Im s | r]
    inv, b = _normalizing_automorphism([r, s])
    q = compose(inv, b).with_inverse_hint((inverse_automorphism(b), inv))
    E1 = p2_vertex(compose(q, m))
    quadric = _blowup("Q", "pt", 1, m, [s], "quadric")
    route1 = [
        _step(S, _blowup("X7", "pt", 2, m, [s]), quadric, (2, 1), blown_up=s),
        _step(quadric, _blowup("X7", "pt", 2, m, [r, s], "over the quadric"), E1, (1, 2),
              blown_up=r, p2=q),
    ]
    a = _moving_to_center(r.representative)
    j = jstar_quadratic(_image_orbit(a, s))
    f1_left = _blowup("F1", "P1", 1, m, [r])
    f1_right = _blowup("F1", "P1", 1, m, [r, s], "after the pair")
    E2 = p2_vertex(compose(compose(j, a), m))
    route2 = [
        _step(S, _blowup("F1", "pt", 2, m, [r]), f1_left, (1, None), blown_up=r, p2=a),
        _step(f1_left, _blowup("X6", "P1", 2, m, [r, s]), f1_right, (2, 2), blown_up=s, p2=j),
        _step(f1_right, _blowup("F1", "pt", 2, m, [r, s], "after the pair"), E2, (None, 1)),
    ]
    center = _blowup("X6", "pt", 3, m, [r, s])
    return (r, s), route1, route2, center


# ---- D5: two real points -------------------------------------------------------

def _build_d5(data, m):
    p, q = data
    if not (p.is_real and q.is_real) or p == q:
        raise ValidationError("D5 needs two distinct real points")
    S = p2_vertex(m)
    a1 = _moving_to_center(p.representative)
    a2 = _moving_to_center(q.representative)
    f0 = _blowup("F0", "P1", 1, m, [p, q])

    def route(x, y, ax):
        f1 = _blowup("F1", "P1", 1, m, [x])
        return [
            _step(S, _blowup("F1", "pt", 2, m, [x]), f1, (1, None), blown_up=x, p2=ax),
            _step(f1, _blowup("X7", "P1", 2, m, [x, y], f"lines through {x}"), f0, (1, 1), blown_up=y),
        ]

    return (p, q), route(p, q, a1), route(q, p, a2), _blowup("X7", "pt", 3, m, [p, q])


# ---- D2: conic bundle C6 over P1 ----------------------------------------------

def _fibres(o: PointOrbit):
    ts = set()
    for p in o.points():
        t = pencil_parameter(STANDARD_PENCIL, p)
        if t in SINGULAR_FIBRES:
            raise DegenerateConfiguration(f"{o} lies on a singular fibre")
        ts.add(t)
    return ts


def _build_d2(data, m):
    A, B = data
    for o in (A, B):
        _check_jcirc_data(o)
    if _fibres(A) & _fibres(B):
        raise DegenerateConfiguration("the two orbits share a fibre")
    start = _blowup("C6", "P1", 1, m, [], "standard conic bundle")

    def route(x, y):
        lx = conic_bundle_link(x)
        y2 = _image_orbit(lx, y)
        ly = conic_bundle_link(y2)
        mid_model = compose(lx, m)
        mid = _blowup("C6", "P1", 1, mid_model, [], "standard conic bundle")
        end = _blowup("C6", "P1", 1, compose(ly, mid_model), [], "standard conic bundle")
        return [
            _step(start, _blowup("S2", "P1", 2, m, [x]), mid, (_mark(x), _mark(x)), blown_up=x, p2=lx,
                  t=pencil_parameter(STANDARD_PENCIL, x.representative)),
            _step(mid, _blowup("S2", "P1", 2, mid_model, [y2]), end, (_mark(y), _mark(y)), blown_up=y2, p2=ly,
                  t=pencil_parameter(STANDARD_PENCIL, y2.representative)),
        ]

    return (A, B), route(A, B), route(B, A), _blowup("S3", "P1", 3, m, [A, B])


# ---- D6: Hirzebruch surfaces over P1 ------------------------------------------

def _hirzebruch(n: int, model, orbits, tag=""):
    return _blowup(f"F{n}", "P1", 1, model, orbits, tag)


def _build_d6(data, m):
    A, B = data
    for o in (A, B):
        if any(p == CENTER for p in o.points()):
            raise DegenerateConfiguration("a data point is the center of the pencil of lines")
    for a in A.points():
        for b in B.points():
            if are_collinear(CENTER, a, b):
                raise DegenerateConfiguration("the two orbits share a fibre")
    top = _hirzebruch(1, m, [], "center")
    concrete = A.is_real == B.is_real

    def route(x, y):
        if x.is_real and y.is_real:
            q = jstar_quadratic(x, y)
            mid = _hirzebruch(0, m, [x])
            end = _hirzebruch(1, compose(q, m), [], "center")
            return [
                _step(top, _blowup("S2", "P1", 2, m, [x]), mid, (1, 1), blown_up=x),
                _step(mid, _blowup("S2", "P1", 2, m, [x, y]), end, (1, 1), blown_up=y, p2=q),
            ]
        if not x.is_real and not y.is_real:
            qx = jstar_quadratic(x)
            y2 = _image_orbit(qx, y)
            qy = jstar_quadratic(y2)
            mid_model = compose(qx, m)
            mid = _hirzebruch(1, mid_model, [], "center")
            end = _hirzebruch(1, compose(qy, mid_model), [], "center")
            return [
                _step(top, _blowup("S2", "P1", 2, m, [x]), mid, (2, 2), blown_up=x, p2=qx),
                _step(mid, _blowup("S2", "P1", 2, mid_model, [y2]), end, (2, 2), blown_up=y2, p2=qy),
            ]
        # a real point and a pair: F1 -> F0 -> F0 one way, F1 -> F1 -> F0 the other
        bottom = _hirzebruch(0, m, [x, y], "both orbits")
        if x.is_real:
            mid = _hirzebruch(0, m, [x])
            return [
                _step(top, _blowup("S2", "P1", 2, m, [x]), mid, (1, 1), blown_up=x),
                _step(mid, _blowup("S2", "P1", 2, m, [x, y]), bottom, (2, 2), blown_up=y),
            ]
        qx = jstar_quadratic(x)
        mid = _hirzebruch(1, compose(qx, m), [], "center")
        return [
            _step(top, _blowup("S2", "P1", 2, m, [x]), mid, (2, 2), blown_up=x, p2=qx),
            _step(mid, _blowup("S2", "P1", 2, m, [x, y]), bottom, (1, 1), blown_up=y),
        ]

    return (A, B), route(A, B), route(B, A), _blowup("S3", "P1", 3, m, [A, B]), concrete


# ---- D3, D4: symbolic ----------------------------------------------------------

def _build_symbolic(sch: DiscSchema, data, m):
    (o,) = data
    want_real = sch.data_kinds[0] == "Real"
    if o.is_real != want_real:
        raise ValidationError(f"{sch.id} needs a {'real point' if want_real else 'conjugate pair'}")
    _check_jcirc_data(o)
    _fibres(o)
    verts = []
    for i, tpl in enumerate(sch.vertex_cycle):
        if tpl.surface == "P2":
            verts.append(p2_vertex(m))
        else:
            verts.append(_blowup(tpl.surface, tpl.base, tpl.rank, m, [o], f"{sch.id} position {i}"))
    steps = []
    n = len(verts)
    for i in range(0, n, 2):
        src, mid, tgt = verts[i], verts[i + 1], verts[(i + 2) % n]
        steps.append(_step(src, mid, tgt, sch.vertex_cycle[i + 1].marks))
    center = _blowup(sch.center.surface, sch.center.base, 3, m, [o], sch.id)
    return steps, center


# ---- assembly ------------------------------------------------------------------

def _surface_matches(template: str, surface: str) -> bool:
    if re.fullmatch(r"F[a-z]", template):
        return re.fullmatch(r"F\d+", surface) is not None
    return template == surface


def _matches_schema(sch: DiscSchema, cycle: List[FibrationVertex], marks) -> bool:
    """Compare an instance cycle with the schema cycle up to rotation and reflection."""
    inst = []
    k = 0
    for v in cycle:
        if v.rank == 2:
            inst.append((v.surface, v.base, 2, marks[k]))
            k += 1
        else:
            inst.append((v.surface, v.base, v.rank, None))
    n = len(inst)
    tpl = list(sch.vertex_cycle)
    if n != len(tpl):
        return False

    def same(seq):
        for (surf, base, rank, mk), t in zip(seq, tpl):
            if rank != t.rank or base != t.base or not _surface_matches(t.surface, surf):
                return False
            if rank == 2 and any(a is not None and a != b for a, b in zip(t.marks, mk)):
                return False
        return True

    flipped = [(s, b, r, (mk[1], mk[0]) if mk else None) for s, b, r, mk in reversed(inst)]
    for seq in (inst, flipped):
        for shift in range(0, n, 2 if seq[0][2] == 1 else 1):
            if same(seq[shift:] + seq[:shift]):
                return True
    return False


def instantiate(sch: DiscSchema, data: Sequence[PointOrbit], marking: Optional[BirationalMap] = None) -> DiscInstance:
    """Concrete disc around the given point data, over the plane model ``marking``."""
    m = marking if marking is not None else identity_map()
    if sch.id in ("D3", "D4"):
        data = _expect(data, 1)
        steps, center = _build_symbolic(sch, data, m)
        route1 = route2 = None
        concrete = False
    else:
        data = _expect(data, 2)
        concrete = True
        if sch.id == "D1":
            data, r1, r2, center = _build_d1(data, m)
        elif sch.id == "D5":
            data, r1, r2, center = _build_d5(data, m)
        elif sch.id == "D2":
            data, r1, r2, center = _build_d2(data, m)
        else:
            data, r1, r2, center, concrete = _build_d6(data, m)
        steps = _reverse_route(r2) + r1
        route1 = _route_map(r1) if concrete else None
        route2 = _route_map(r2) if concrete else None
    word = LinkWord(tuple(s.link for s in steps))
    inst = DiscInstance(sch, tuple(data), center, word, tuple(s.middle for s in steps),
                        tuple(s.marks for s in steps), concrete, route1, route2)
    if len(inst.cycle()) % 2:
        raise InvariantViolation("boundary cycle has odd length")
    if not _matches_schema(sch, inst.cycle(), inst.marks):
        raise InvariantViolation(f"instance boundary does not match the {sch.id} schema")
    return inst


def verify_elementary_relation(inst: DiscInstance) -> BirationalMap:
    """Automorphism alpha with route1 = alpha o route2, the composite of the closed boundary.

    Raises SymbolicOnly for boundaries without plane coordinates and
    InvariantViolation when the two routes do not differ by an automorphism.
    """
    if not inst.concrete:
        raise SymbolicOnly(f"{inst.schema.id} boundary passes through surfaces without plane "
                           "coordinates; only the schema structure is checked")
    rows = post_factor(inst.route1, inst.route2)
    if rows is None:
        raise InvariantViolation(f"{inst.schema.id} boundary does not close up to an automorphism")
    alpha = automorphism(rows)
    if compose(alpha, inst.route2) != inst.route1 or not is_automorphism(alpha):
        raise InvariantViolation("relation check failed on exact recomposition")
    return alpha


def corner_indices(inst: DiscInstance) -> List[int]:
    """Hirzebruch indices of the rank 1 corners along the boundary, closing vertex repeated."""
    idx = [hirzebruch_index(v) for v in inst.cycle() if v.rank == 1]
    if any(i is None for i in idx):
        raise ValidationError("disc has corners that are not Hirzebruch surfaces")
    return idx + idx[:1]


# ---------------------------------------------------------------------------
# intersections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Empty:
    def to_record(self) -> dict:
        return {"intersection": "Empty"}


@dataclass(frozen=True)
class SingleVertex:
    vertex: FibrationVertex

    def to_record(self) -> dict:
        return {"intersection": "SingleVertex", "vertex": self.vertex.label()}


@dataclass(frozen=True)
class BoundarySegment:
    middle: FibrationVertex
    ends: Tuple[FibrationVertex, FibrationVertex]

    def to_record(self) -> dict:
        return {"intersection": "BoundarySegment", "middle": self.middle.label(),
                "ends": [v.label() for v in self.ends]}


def _adjacent(cycle: List[FibrationVertex], a: FibrationVertex, b: FibrationVertex) -> bool:
    n = len(cycle)
    return any(cycle[i] == a and (cycle[(i + 1) % n] == b or cycle[i - 1] == b) for i in range(n))


def intersect_discs(a: DiscInstance, b: DiscInstance):
    """Shared part of two distinct discs: nothing, one vertex, or a two-edge boundary segment.

    Vertices are identified by their markings; non-plane vertices compare
    by their description as blow-ups of an identical plane model.
    """
    if a is b or (a.schema.id == b.schema.id and a.data == b.data and a.boundary == b.boundary):
        raise ValidationError("intersect_discs needs two distinct disc instances")
    if a.center == b.center:
        raise ValidationError("discs with the same center coincide")
    ca, cb = a.cycle(), b.cycle()
    shared = [v for v in dict.fromkeys(ca) if v in set(cb)]
    if a.center in shared or b.center in shared:
        raise InvariantViolation("a disc center lies on another disc")
    if not shared:
        return Empty()
    if len(shared) == 1:
        return SingleVertex(shared[0])
    mids = [v for v in shared if v.rank == 2]
    ends = [v for v in shared if v.rank == 1]
    if len(shared) == 3 and len(mids) == 1 and len(ends) == 2:
        mid = mids[0]
        if all(_adjacent(c, mid, e) for c in (ca, cb) for e in ends):
            return BoundarySegment(mid, (ends[0], ends[1]))
    raise InvariantViolation(f"discs share {len(shared)} vertices that do not form a boundary segment")
