"""Words in the amalgamated product G* *_H G-circ: letter classes, normal form, cosets, Bass-Serre ball.

A word (l1, ..., ln) stands for the composite l1 o l2 o ... o ln, so ln
is applied first.  G* is generated by automorphisms and de Jonquieres maps,
G-circ by automorphisms and the group preserving the standard pencil of
conics, and H is their intersection, generated by automorphisms and sigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .abelianization import Z2Vector, psi_element
from .birational_maps import (
    BirationalMap,
    compose,
    compose_word,
    identity_map,
    inverse_automorphism,
    inverse_of,
    is_automorphism,
    is_identity,
    proper_base_points,
)
from .errors import UnknownLetter, ValidationError
from .generators import (
    GeneratorTag,
    classify,
    is_in_Jcirc,
    is_in_Jstar,
    sigma,
    sigma_std,
    sigma_witness,
)

IN_H = "InH"
GSTAR_ONLY = "GStarOnly"
GCIRC_ONLY = "GCircOnly"
UNKNOWN = "Unknown"

GSTAR = "GStar"
GCIRC = "GCirc"


@dataclass(frozen=True)
class FactorClass:
    variant: str
    certificate: str = ""
    witness: Optional[Tuple[BirationalMap, ...]] = field(default=None, compare=False)
    phi: Optional[Z2Vector] = None

    def factor(self) -> Optional[str]:
        if self.variant == GSTAR_ONLY:
            return GSTAR
        if self.variant == GCIRC_ONLY:
            return GCIRC
        return None

    def to_record(self) -> dict:
        rec = {"class": self.variant, "certificate": self.certificate}
        if self.phi is not None:
            rec["phi"] = self.phi.to_json()["support"]
        return rec

    def __str__(self):
        return self.variant


@dataclass(frozen=True)
class Letter:
    map: BirationalMap
    cls: FactorClass

    def inverse(self) -> "Letter":
        w = self.cls.witness
        inv_w = tuple(inverse_of(x) for x in reversed(w)) if w is not None else None
        cls = FactorClass(self.cls.variant, self.cls.certificate, inv_w, self.cls.phi)
        return Letter(inverse_of(self.map), cls)


@dataclass(frozen=True)
class AmalgamWord:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def variants(self) -> Tuple[str, ...]:
        return tuple(l.cls.variant for l in self.letters)

    def composite(self) -> BirationalMap:
        return compose_word([l.map for l in self.letters])

    def inverse(self) -> "AmalgamWord":
        return AmalgamWord(tuple(l.inverse() for l in reversed(self.letters)))

    def __add__(self, other: "AmalgamWord") -> "AmalgamWord":
        return AmalgamWord(self.letters + other.letters)

    def to_records(self) -> List[dict]:
        return [dict(l.cls.to_record(), degree=l.map.degree, map=str(l.map)) for l in self.letters]


def word_of(maps: Sequence[BirationalMap]) -> AmalgamWord:
    return AmalgamWord(tuple(Letter(f, classify_letter(f)) for f in maps))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def classify_letter(f: BirationalMap) -> FactorClass:
    """Which factor a map lies in, with the certificate used; Unknown when nothing is certified."""
    if f.degree == 1:
        return FactorClass(IN_H, "automorphism", (f,))
    tag = classify(f)
    if tag is GeneratorTag.OneRealPairQuadratic:
        alpha, beta = sigma_witness(f)
        return FactorClass(IN_H, "quadratic with one real base point and a pair: alpha o sigma o beta",
                           (inverse_automorphism(alpha), sigma(), inverse_automorphism(beta)))
    if tag is GeneratorTag.ThreeRealQuadratic:
        return FactorClass(GSTAR_ONLY, "quadratic with three real base points", None, Z2Vector())
    if tag is GeneratorTag.StandardQuintic and is_in_Jcirc(f) is not None:
        v = psi_element(f)
        if not v.is_zero():
            return FactorClass(GCIRC_ONLY, "standard quintic with nonzero psi", None, v)
        return FactorClass(UNKNOWN, "standard quintic with zero psi", None, v)
    if is_in_Jstar(f) is not None:
        return FactorClass(UNKNOWN, "de Jonquieres map: in G* but H-membership not certified", None, Z2Vector())
    if is_in_Jcirc(f) is not None and f.degree <= 4:
        return FactorClass(UNKNOWN, "low-degree element of the conic pencil group: in G-circ, "
                           "H-membership not certified", None, Z2Vector())
    return FactorClass(UNKNOWN, "no certificate", None, None)


def _merge_class(x: Letter, y: Letter, f: BirationalMap) -> FactorClass:
    """Class of the product f = x o y of two letters of the same factor (or involving H)."""
    a, b = x.cls, y.cls
    if a.variant == IN_H and b.variant == IN_H:
        return FactorClass(IN_H, "product of H letters", a.witness + b.witness)
    if f.degree == 1:
        return FactorClass(IN_H, "automorphism", (f,))
    if a.variant == IN_H or b.variant == IN_H:
        other = b if a.variant == IN_H else a
        return FactorClass(other.variant, f"H-coset of a {other.variant} letter", None, other.phi)
    if a.variant == GCIRC_ONLY and b.variant == GCIRC_ONLY:
        v = a.phi + b.phi
        if not v.is_zero():
            return FactorClass(GCIRC_ONLY, "product in G-circ with nonzero Phi", None, v)
    c = classify_letter(f)
    if c.variant == UNKNOWN:
        raise UnknownLetter(f"product of two {a.variant} letters (degree {f.degree}) could not be classified")
    return c


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

def _same_factor(x: Letter, y: Letter) -> bool:
    fx, fy = x.cls.factor(), y.cls.factor()
    return x.cls.variant == IN_H or y.cls.variant == IN_H or fx == fy


def _is_inverse_pair(x: Letter, y: Letter) -> bool:
    for a, b in ((x, y), (y, x)):
        hint = b.map.inverse_hint
        if hint is not None and len(hint) == 1 and hint[0] == a.map:
            return True
    return False


def reduce(w: AmalgamWord) -> AmalgamWord:
    """Normal form: empty, one H letter, or alternating GStarOnly / GCircOnly letters."""
    for l in w:
        if l.cls.variant == UNKNOWN:
            raise UnknownLetter(f"cannot reduce a word with an unclassified letter ({l.cls.certificate})")
    stack: List[Letter] = []
    for letter in w:
        cur = letter
        while stack and _same_factor(stack[-1], cur):
            top = stack.pop()
            f = identity_map() if _is_inverse_pair(top, cur) else compose(top.map, cur.map)
            cur = Letter(f, _merge_class(top, cur, f))
        if cur.cls.variant == IN_H and is_identity(cur.map):
            continue
        stack.append(cur)
    # an H letter can only survive at the bottom; absorb it into its right neighbour
    if len(stack) >= 2 and stack[0].cls.variant == IN_H:
        h, nxt = stack[0], stack[1]
        f = compose(h.map, nxt.map)
        stack[:2] = [Letter(f, _merge_class(h, nxt, f))]
    return AmalgamWord(tuple(stack))


def is_reduced(w: AmalgamWord) -> bool:
    v = w.variants()
    if len(v) <= 1:
        return len(v) == 0 or v[0] in (IN_H, GSTAR_ONLY, GCIRC_ONLY)
    if any(x not in (GSTAR_ONLY, GCIRC_ONLY) for x in v):
        return False
    return all(a != b for a, b in zip(v, v[1:]))


def nontriviality_certificate(w: AmalgamWord) -> bool:
    """True when the composite is visibly not the identity: degree >= 2 or a non-identity automorphism."""
    if len(w) == 0:
        return False
    f = w.composite()
    return f.degree >= 2 or not is_identity(f)


# ---------------------------------------------------------------------------
# coset separation for translations
# ---------------------------------------------------------------------------

def translation(a, b) -> BirationalMap:
    from .birational_maps import automorphism
    return automorphism([[1, 0, a], [0, 1, b], [0, 0, 1]], name=f"translation({a},{b})")


def translation_vector(t: BirationalMap) -> Tuple:
    """(a, b) for t = [x + a z : y + b z : z]; rejects anything else."""
    if not is_automorphism(t):
        raise ValidationError("not an automorphism")
    m = t.matrix()
    s = m[2][2]
    if s == 0:
        raise ValidationError("not a translation")
    n = [[c / s for c in row] for row in m]
    if n[0][0] != 1 or n[0][1] != 0 or n[1][0] != 0 or n[1][1] != 1 or n[2][0] != 0 or n[2][1] != 0:
        raise ValidationError("not a translation [x+az : y+bz : z]")
    return n[0][2], n[1][2]


@dataclass(frozen=True)
class SeparationCertificate:
    """The composite sigma_std o beta^-1 o alpha o sigma_std with its three real base points.

    ``base_points`` lists the proper ones; ``infinitely_near`` counts the rest.
    A quadratic map whose proper base points are real has only real infinitely
    near ones: they form a chain over a proper point, one per neighbourhood,
    so complex conjugation fixes each.
    """

    separated: bool
    composite: BirationalMap
    base_points: Tuple[str, ...]
    infinitely_near: int = 0

    def real_base_point_count(self) -> int:
        return len(self.base_points) + self.infinitely_near


def coset_certificate(alpha: BirationalMap, beta: BirationalMap) -> SeparationCertificate:
    translation_vector(alpha)
    translation_vector(beta)
    s = sigma_std()
    f = compose_word([s, inverse_of(beta), alpha, s])
    if f.degree == 1:
        return SeparationCertificate(False, f, ())
    pts = proper_base_points(f)
    if f.degree != 2 or not all(o.is_real and m == 1 for o, m in pts):
        raise UnknownLetter("composite is not a quadratic map with real base points")
    return SeparationCertificate(True, f, tuple(str(o) for o, _ in pts), 3 - len(pts))


def coset_separation(alpha: BirationalMap, beta: BirationalMap) -> bool:
    """Whether (alpha o sigma_std) G-circ and (beta o sigma_std) G-circ are distinct cosets."""
    return coset_certificate(alpha, beta).separated


# ---------------------------------------------------------------------------
# Bass-Serre tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeVertex:
    """The coset (prefix) G_factor, with the prefix given as a reduced word."""

    prefix: AmalgamWord
    factor: str

    def label(self) -> str:
        degs = ".".join(str(l.map.degree) for l in self.prefix) or "1"
        return f"{degs}*{self.factor}"


def _in_factor(w: AmalgamWord, factor: Optional[str]) -> bool:
    r = reduce(w)
    if len(r) == 0:
        return True
    if len(r) > 1:
        return False
    v = r.letters[0].cls.variant
    return v == IN_H or (factor is not None and r.letters[0].cls.factor() == factor)


def _strip_common(p: AmalgamWord, q: AmalgamWord) -> Tuple[AmalgamWord, AmalgamWord]:
    k = 0
    while k < min(len(p), len(q)) and p.letters[k].map == q.letters[k].map:
        k += 1
    return AmalgamWord(p.letters[k:]), AmalgamWord(q.letters[k:])


def same_coset(p: AmalgamWord, q: AmalgamWord, factor: Optional[str]) -> bool:
    """p G = q G for G = G*, G-circ (factor) or H (factor None), decided by reducing p^-1 q."""
    a, b = _strip_common(p, q)
    return _in_factor(a.inverse() + b, factor)


@dataclass
class LocalTree:
    vertices: List[TreeVertex]
    edges: List[Tuple[int, int, AmalgamWord]]

    def is_tree(self) -> bool:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b, _ in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        components = len({find(i) for i in range(len(self.vertices))})
        return len(self.vertices) == len(self.edges) + components

    def index_of(self, v: TreeVertex) -> Optional[int]:
        for i, u in enumerate(self.vertices):
            if u.factor == v.factor and same_coset(u.prefix, v.prefix, v.factor):
                return i
        return None

    def to_edge_list(self) -> List[str]:
        return [f"{self.vertices[a].label()} -- {self.vertices[b].label()}" for a, b, _ in self.edges]


def _prefixes(w: AmalgamWord, max_len: int):
    r = reduce(w)
    return [AmalgamWord(r.letters[:k]) for k in range(min(len(r), max_len) + 1)]


def bass_serre_ball(words: Sequence[AmalgamWord], radius: int) -> LocalTree:
    """Vertices pG*, pG-circ and edges pH for reduced prefixes p of length < radius."""
    if radius < 1 or radius > 4:
        raise ValidationError("radius must be between 1 and 4")
    prefixes: List[AmalgamWord] = [AmalgamWord(())]
    for w in words:
        for p in _prefixes(w, radius - 1):
            if not any(len(p) == len(q) and same_coset(q, p, None) for q in prefixes):
                prefixes.append(p)
    tree = LocalTree([], [])

    def vertex(p, factor):
        v = TreeVertex(p, factor)
        i = tree.index_of(v)
        if i is None:
            tree.vertices.append(v)
            i = len(tree.vertices) - 1
        return i

    edge_reps: List[AmalgamWord] = []
    for p in prefixes:
        if any(same_coset(q, p, None) for q in edge_reps):
            continue
        edge_reps.append(p)
        tree.edges.append((vertex(p, GSTAR), vertex(p, GCIRC), p))
    return tree


def act(f: AmalgamWord, v: TreeVertex) -> TreeVertex:
    """Image of the coset vertex under left multiplication by f."""
    return TreeVertex(reduce(f + v.prefix), v.factor)


def same_vertex(u: TreeVertex, v: TreeVertex) -> bool:
    return u.factor == v.factor and same_coset(u.prefix, v.prefix, u.factor)


def fixed_base_vertices(f: AmalgamWord) -> List[str]:
    """Which of the two base vertices G*, G-circ the element fixes."""
    out = []
    for factor in (GSTAR, GCIRC):
        v = TreeVertex(AmalgamWord(()), factor)
        if same_vertex(act(f, v), v):
            out.append(factor)
    return out


def tree_distance_from_base(v: TreeVertex, base_factor: str) -> int:
    """Tree distance from v to the base vertex G_base_factor.

    For a reduced prefix l1...ln with ln outside v's factor, the vertices
    l1...lk G_(factor of l(k+1)) form a path of length n starting at the
    base vertex of l1's factor.
    """
    r = reduce(v.prefix)
    letters = [l for l in r.letters if l.cls.variant != IN_H]
    if letters and letters[-1].cls.factor() == v.factor:
        letters = letters[:-1]
    n = len(letters)
    if n == 0:
        return 0 if v.factor == base_factor else 1
    return n if letters[0].cls.factor() == base_factor else n + 1
