import random

import pytest
from hypothesis import given, strategies as st

from cremona.birational_maps import (
    BirationalMap,
    automorphism,
    base_points,
    compose,
    compose_word,
    contracted_curves,
    identity_map,
    inverse_of,
    is_identity,
    multiplicity,
    proper_base_points,
)
from cremona.errors import InfinitelyNearBasePoints, ValidationError
from cremona.exact_geometry import GaussianRational, PointOrbit, ProjectivePoint, X, Y, Z
from cremona.generators import sigma, sigma_std
from cremona.sampling import (
    random_automorphism,
    random_de_jonquieres,
    random_sigma_type,
    random_three_real_quadratic,
)

seeds = st.integers(0, 10_000)


def test_sigma_and_sigma_std_are_involutions():
    assert is_identity(compose(sigma(), sigma()))
    assert is_identity(compose(sigma_std(), sigma_std()))


def test_base_points_of_sigma():
    pts = base_points(sigma())
    assert sorted(o.kind for o in pts) == ["ConjugatePair", "Real"]
    assert PointOrbit.of(ProjectivePoint(0, 0, 1)) in pts
    assert PointOrbit.of(ProjectivePoint(1, GaussianRational(0, 1), 0)) in pts


def test_base_points_of_sigma_std():
    pts = base_points(sigma_std())
    assert {o.representative for o in pts} == {
        ProjectivePoint(1, 0, 0), ProjectivePoint(0, 1, 0), ProjectivePoint(0, 0, 1)}


def test_infinitely_near_base_points_detected():
    f = BirationalMap([X * X, X * Y, Y * Y + X * Z])
    with pytest.raises(InfinitelyNearBasePoints):
        base_points(f)


def test_non_dominant_triple_rejected():
    with pytest.raises(ValidationError):
        BirationalMap([X, X, Z])


def test_common_factor_rejected():
    with pytest.raises(ValidationError):
        BirationalMap([X * X, X * Y, X * Z])


@given(seeds)
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    f, g, h = random_sigma_type(rng), random_automorphism(rng), random_three_real_quadratic(rng)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(seeds)
def test_inverse_recomposes_to_identity(seed):
    rng = random.Random(seed)
    f = random_three_real_quadratic(rng)
    assert is_identity(compose(inverse_of(f), f))
    assert is_identity(compose(f, inverse_of(f)))


@given(seeds)
def test_noether_equalities(seed):
    f = random_de_jonquieres(random.Random(seed), 3)
    data = proper_base_points(f)
    d = f.degree
    assert sum(o.size() * m for o, m in data) == 3 * (d - 1)
    assert sum(o.size() * m * m for o, m in data) == d * d - 1


def test_center_multiplicity_of_de_jonquieres():
    f = random_de_jonquieres(random.Random(5), 3)
    assert multiplicity(f, ProjectivePoint(0, 0, 1)) == f.degree - 1


def test_automorphism_inverse():
    a = automorphism([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    assert is_identity(compose(inverse_of(a), a))


def test_compose_word_order():
    a = automorphism([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    f = compose_word([sigma_std(), a])
    assert f == compose(sigma_std(), a)


def test_contracted_curves_of_sigma_std_are_coordinate_lines():
    curves = contracted_curves(sigma_std())
    assert sorted(str(c.curve) for c in curves) == ["x", "y", "z"]


def test_identity_map():
    assert is_identity(identity_map())
