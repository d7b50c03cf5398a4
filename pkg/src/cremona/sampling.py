"""Seeded random generators for maps and words, used by property tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional

from .birational_maps import (
    BirationalMap,
    automorphism,
    compose,
    compose_word,
    proper_base_points,
)
from .errors import ValidationError
from .exact_geometry import GaussianRational, PointOrbit, ProjectivePoint, are_collinear
from .generators import (
    jcirc_quadratic,
    quadratic_with_base_points,
    sigma,
    standard_quintic,
)
from .linalg import determinant
from .sarkisov_links import CENTER, jstar_quadratic


def random_matrix(rng: random.Random, bound: int = 3, fix_center: bool = False) -> List[list]:
    while True:
        m = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if fix_center:
            m[0][2] = m[1][2] = 0
        if determinant(m) != 0:
            return m


def random_automorphism(rng: random.Random, fix_center: bool = False) -> BirationalMap:
    return automorphism(random_matrix(rng, fix_center=fix_center))


def random_real_point(rng: random.Random, bound: int = 5) -> ProjectivePoint:
    while True:
        c = [rng.randint(-bound, bound) for _ in range(3)]
        if any(c):
            return ProjectivePoint(*c)


def random_pair(rng: random.Random, bound: int = 4) -> PointOrbit:
    """A conjugate pair whose real and imaginary parts span a plane avoiding [0:0:1]."""
    while True:
        re = [rng.randint(-bound, bound) for _ in range(3)]
        im = [rng.randint(-bound, bound) for _ in range(3)]
        if not any(im):
            continue
        if determinant([[re[i], im[i], CENTER.coords[i]] for i in range(3)]) == 0:
            continue
        return PointOrbit.of(ProjectivePoint(*[GaussianRational(a, b) for a, b in zip(re, im)]))


def _jstar_step(rng: random.Random) -> BirationalMap:
    while True:
        try:
            if rng.random() < 0.5:
                return jstar_quadratic(random_pair(rng))
            a, b = random_real_point(rng), random_real_point(rng)
            if a == CENTER or b == CENTER or are_collinear(a, b, CENTER):
                continue
            return jstar_quadratic(PointOrbit.of(a), PointOrbit.of(b))
        except ValidationError:
            continue


def _has_proper_base_points(f: BirationalMap) -> bool:
    return sum(o.size() * m for o, m in proper_base_points(f)) == 3 * (f.degree - 1)


def random_de_jonquieres(rng: random.Random, max_degree: int = 3) -> BirationalMap:
    """A map preserving the lines through [0:0:1], of degree 2..max_degree, with proper base points."""
    while True:
        steps = rng.randint(1, max_degree - 1)
        maps = [random_automorphism(rng, fix_center=True)]
        for _ in range(steps):
            maps.append(_jstar_step(rng))
            maps.append(random_automorphism(rng, fix_center=True))
        f = compose_word(maps)
        if 2 <= f.degree <= max_degree and _has_proper_base_points(f):
            return f


def random_three_real_quadratic(rng: random.Random) -> BirationalMap:
    while True:
        pts = [random_real_point(rng) for _ in range(3)]
        if len(set(pts)) == 3 and not are_collinear(*pts):
            q = quadratic_with_base_points([PointOrbit.of(p) for p in pts])
            return compose(random_automorphism(rng), q)


def random_sigma_type(rng: random.Random) -> BirationalMap:
    return compose_word([random_automorphism(rng), sigma(), random_automorphism(rng)])


def random_jcirc_quadratic(rng: random.Random) -> BirationalMap:
    while True:
        try:
            return jcirc_quadratic(PointOrbit.of(random_real_point(rng)), rng.randint(0, 1))
        except ValidationError:
            continue


QUINTIC_PAIRS = [
    ProjectivePoint(1, -2, GaussianRational(0, 1)),
    ProjectivePoint(1, -2, GaussianRational(0, 2)),
    ProjectivePoint(1, -2, GaussianRational(1, 1)),
    ProjectivePoint(1, -2, GaussianRational(2, 2)),
    ProjectivePoint(1, -1, GaussianRational(0, 1)),
    ProjectivePoint(1, -1, GaussianRational(2, 1)),
    ProjectivePoint(1, -1, GaussianRational(2, 2)),
    ProjectivePoint(1, 0, GaussianRational(0, 2)),
    ProjectivePoint(1, 0, GaussianRational(1, 2)),
    ProjectivePoint(1, 0, GaussianRational(2, 1)),
    ProjectivePoint(1, 0, GaussianRational(2, 2)),
    ProjectivePoint(1, 3, GaussianRational(0, 1)),
]


@lru_cache(maxsize=None)
def quintic_pool(size: int = 4) -> tuple:
    """Standard quintics in the conic pencil group, one per distinct fibre label."""
    from .abelianization import psi_element
    out, labels = [], set()
    for p in QUINTIC_PAIRS:
        if len(out) == size:
            break
        try:
            q = standard_quintic(PointOrbit.of(p))
        except ValidationError:
            continue
        v = psi_element(q)
        if len(v) != 1 or {l.v for l in v.support} & {l.v for l in labels}:
            continue
        labels |= v.support
        out.append(q)
    if len(out) < size:
        raise ValidationError(f"only {len(out)} quintics with distinct labels available")
    return tuple(out)


def random_translation_vectors(rng: random.Random, count: int):
    seen = set()
    while len(seen) < count:
        seen.add((Fraction(rng.randint(-9, 9), rng.randint(1, 3)), Fraction(rng.randint(-9, 9), rng.randint(1, 3))))
    return sorted(seen)


def random_letter(rng: random.Random) -> BirationalMap:
    """One generator: automorphism, sigma type, three-real quadratic, J* map, J-circ quadratic or quintic."""
    kind = rng.randrange(6)
    if kind == 0:
        return random_automorphism(rng)
    if kind == 1:
        return random_sigma_type(rng)
    if kind == 2:
        return random_three_real_quadratic(rng)
    if kind == 3:
        return compose(random_automorphism(rng, fix_center=True), _jstar_step(rng))
    if kind == 4:
        return random_jcirc_quadratic(rng)
    return rng.choice(quintic_pool(4))


@lru_cache(maxsize=8)
def letter_pool(seed: int = 0, size: int = 24) -> tuple:
    """Tagged generator letters drawn once from a seed; words are sampled from this pool."""
    from .abelianization import generator_letter
    rng = random.Random(seed)
    return tuple(generator_letter(random_letter(rng)) for _ in range(size))


def random_word(rng: random.Random, max_length: int = 6, pool: Optional[tuple] = None) -> list:
    """A generator word of length 0..max_length over the letter pool."""
    pool = pool or letter_pool()
    return [rng.choice(pool) for _ in range(rng.randint(0, max_length))]


_DISC_KINDS = {
    "D1": ("Real", "ConjugatePair"),
    "D2": ("Real", "Real"),
    "D3": ("Real",),
    "D4": ("ConjugatePair",),
    "D5": ("Real", "Real"),
    "D6": ("Real", "Real"),
}


def _random_orbit(rng: random.Random, kind: str) -> PointOrbit:
    if kind == "Real":
        return PointOrbit.of(random_real_point(rng))
    return random_pair(rng)


def random_disc_instance(sid: str, rng: random.Random, kinds: Optional[tuple] = None, attempts: int = 200):
    """A disc instance of the schema with seeded point data; kinds overrides the orbit kinds."""
    from .square_complex import instantiate, schema
    sch = schema(sid)
    kinds = kinds or _DISC_KINDS[sid]
    for _ in range(attempts):
        data = [_random_orbit(rng, k) for k in kinds]
        try:
            return instantiate(sch, data)
        except ValidationError:
            continue
    raise ValidationError(f"no admissible {sid} data found in {attempts} attempts")


@lru_cache(maxsize=1)
def gstar_pool() -> tuple:
    """Quadratic maps with three real base points: a o sigma_std o b for a few automorphisms."""
    from .generators import sigma_std
    rng = random.Random(17)
    return tuple(compose_word([random_automorphism(rng), sigma_std(), random_automorphism(rng)])
                 for _ in range(4))


def _h_letter(rng: random.Random) -> BirationalMap:
    return random_sigma_type(rng) if rng.random() < 0.2 else random_automorphism(rng)


def random_amalgam_word(rng: random.Random, max_degree: int = 100):
    """A word whose reduction is certifiable: an alternating core with H letters between
    the core letters and at most one cancelling block Y Y^-1, Y opposite to its left neighbour."""
    from .amalgam import GCIRC, GSTAR, AmalgamWord, word_of
    pools = {GSTAR: word_of(gstar_pool()).letters, GCIRC: word_of(quintic_pool(4)).letters}
    other = {GSTAR: GCIRC, GCIRC: GSTAR}
    while True:
        factor = rng.choice((GSTAR, GCIRC))
        items, factors = [], []
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.5:
                items.append(word_of([_h_letter(rng)]).letters[0])
                factors.append(None)
            x = rng.choice(pools[factor])
            items.append(x.inverse() if rng.random() < 0.5 else x)
            factors.append(factor)
            factor = other[factor]
        if rng.random() < 0.6:
            pos = rng.randint(0, len(items))
            left = next((f for f in reversed(factors[:pos]) if f is not None), None)
            yf = other[left] if left else rng.choice((GSTAR, GCIRC))
            y = rng.choice(pools[yf])
            items[pos:pos] = [y, y.inverse()]
            factors[pos:pos] = [yf, yf]
        degree = 1
        for l in items:
            degree *= l.map.degree
        if degree <= max_degree:
            return AmalgamWord(tuple(items))
