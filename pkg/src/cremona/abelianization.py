"""The Z/2-valued homomorphisms psi (on J-circ), Psi (on links) and Phi (on words)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from .birational_maps import BirationalMap, inverse_of
from .errors import UnsupportedMap, ValidationError
from .exact_geometry import (
    STANDARD_PENCIL,
    _fmt_rational,
    im_part,
    is_real_scalar,
    pencil_parameter,
    re_part,
)
from .generators import GeneratorTag, classify, is_in_Jcirc
from .sarkisov_links import Link, third_pair


class OutOfRangeLabel(UserWarning):
    """A fibre label whose printed value 1 - |a|/(a^2+b^2) falls outside (0, 1]."""


@dataclass(frozen=True, order=False)
class IndexLabel:
    """Fibre label identified by the raw pair (|a|, a^2 + b^2)."""

    raw: Tuple[Fraction, Fraction]

    @property
    def v(self) -> Fraction:
        a, n = self.raw
        return 1 - a / n

    @property
    def out_of_range(self) -> bool:
        return not (0 < self.v <= 1)

    def sort_key(self):
        return (self.v, self.raw)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return _fmt_rational(self.v)


class _Zero:
    """The contribution of a real fibre: no label."""

    def __repr__(self):
        return "Zero"


Zero = _Zero()


def fibre_index(a, b):
    """Label of the fibre over [a + ib : 1]; Zero when b = 0."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return Zero
    label = IndexLabel((abs(a), a * a + b * b))
    if label.out_of_range:
        warnings.warn(f"fibre label v = {label} lies outside (0, 1] for a={a}, b={b}", OutOfRangeLabel)
    return label


def label_of_parameter(t):
    return fibre_index(re_part(t), im_part(t))


@dataclass(frozen=True)
class Z2Vector:
    support: FrozenSet[IndexLabel] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))

    @classmethod
    def basis(cls, label) -> "Z2Vector":
        if label is Zero:
            return cls()
        return cls(frozenset([label]))

    def __add__(self, other: "Z2Vector") -> "Z2Vector":
        return Z2Vector(self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support

    def __len__(self):
        return len(self.support)

    def sorted_labels(self):
        return sorted(self.support)

    def out_of_range_labels(self):
        return [l for l in self.sorted_labels() if l.out_of_range]

    def to_json(self) -> dict:
        return {"support": [str(l) for l in self.sorted_labels()]}

    def __str__(self):
        return "{" + ", ".join(str(l) for l in self.sorted_labels()) + "}"


def vector_sum(vectors: Iterable[Z2Vector]) -> Z2Vector:
    out = Z2Vector()
    for v in vectors:
        out = out + v
    return out


# ---------------------------------------------------------------------------
# psi on links and on J-circ elements
# ---------------------------------------------------------------------------

def _is_c6_link(l: Link) -> bool:
    return l.kind == "II" and l.source.surface == "C6" and l.target.surface == "C6" and l.source.base == "P1"


def psi_word(links: Sequence[Link]) -> Z2Vector:
    """Sum of e_v over the links, v the label of each contracted fibre's parameter."""
    out = Z2Vector()
    for l in links:
        if l.fibre_parameter is None:
            raise ValidationError("link carries no fibre parameter")
        if not is_real_scalar(l.fibre_parameter):
            out = out + Z2Vector.basis(label_of_parameter(l.fibre_parameter))
    return out


def Psi_link(l: Link) -> Z2Vector:
    """Value of the lifted homomorphism on one link: zero unless it is a C6 type II link."""
    if not _is_c6_link(l):
        return Z2Vector()
    if l.fibre_parameter is None:
        raise ValidationError("conic bundle link carries no fibre parameter")
    if is_real_scalar(l.fibre_parameter):
        return Z2Vector()
    return Z2Vector.basis(label_of_parameter(l.fibre_parameter))


def psi_element(f: BirationalMap) -> Z2Vector:
    """psi on J-circ: zero in degree <= 4, e_v for a standard quintic."""
    if is_in_Jcirc(f) is None:
        raise ValidationError("map does not preserve the standard pencil of conics")
    if f.degree <= 4:
        return Z2Vector()
    if classify(f) is GeneratorTag.StandardQuintic:
        t = pencil_parameter(STANDARD_PENCIL, third_pair(f).representative)
        return Z2Vector.basis(label_of_parameter(t))
    raise UnsupportedMap(f"psi is not computed for J-circ elements of degree {f.degree} "
                         "that are not standard quintics")


def inverse_label_agrees(q: BirationalMap) -> bool:
    """Soft check that psi(q) == psi(q^-1) labelwise; a False is reported, never raised."""
    return psi_element(q) == psi_element(inverse_of(q))


# ---------------------------------------------------------------------------
# Phi on generator words
# ---------------------------------------------------------------------------

_GSTAR_TAGS = {
    GeneratorTag.Automorphism,
    GeneratorTag.Sigma,
    GeneratorTag.ThreeRealQuadratic,
    GeneratorTag.OneRealPairQuadratic,
    GeneratorTag.DeJonquieres,
}


@dataclass(frozen=True)
class GeneratorLetter:
    map: BirationalMap
    tag: GeneratorTag
    jcirc_witness: Optional[tuple] = None


def generator_letter(f: BirationalMap) -> GeneratorLetter:
    """Tag a map and attach its J-circ witness when it is a J-circ letter."""
    tag = classify(f)
    witness = None
    if tag not in _GSTAR_TAGS:
        witness = is_in_Jcirc(f)
    return GeneratorLetter(f, tag, witness)


GeneratorWord = Tuple[GeneratorLetter, ...]


def letter_value(letter: GeneratorLetter) -> Z2Vector:
    if letter.tag is None:
        raise ValidationError("untagged letter")
    if letter.tag in _GSTAR_TAGS:
        return Z2Vector()
    if letter.jcirc_witness is None:
        raise UnsupportedMap(f"letter with tag {letter.tag} is neither in G* nor a tagged J-circ element")
    return psi_element(letter.map)


def Phi_word(word: Sequence) -> Z2Vector:
    """Sum of letter values; bare maps are tagged on the fly."""
    return vector_sum(letter_value(l if isinstance(l, GeneratorLetter) else generator_letter(l))
                      for l in word)
