import random

import pytest
from hypothesis import given, strategies as st

from cremona.birational_maps import compose, compose_word, inverse_of, is_identity, proper_base_points
from cremona.errors import ValidationError
from cremona.exact_geometry import GaussianRational, PointOrbit, ProjectivePoint
from cremona.generators import (
    STANDARD_ORBITS,
    GeneratorTag,
    classify,
    conic_bundle_link,
    is_in_Jcirc,
    is_in_Jstar,
    jcirc_quadratic,
    pair_with_parameter,
    quadratic_with_base_points,
    sigma,
    sigma_std,
    standard_quintic,
)
from cremona.sampling import QUINTIC_PAIRS, random_de_jonquieres, random_jcirc_quadratic

seeds = st.integers(0, 10_000)


def test_classification_examples():
    assert classify(sigma()) is GeneratorTag.OneRealPairQuadratic
    assert classify(sigma_std()) is GeneratorTag.ThreeRealQuadratic


def test_sigma_lies_in_both_pencil_groups():
    assert is_in_Jstar(sigma()) is not None
    assert is_in_Jcirc(sigma()) is not None


def test_sigma_std_is_not_in_jcirc():
    assert is_in_Jcirc(sigma_std()) is None


@given(seeds)
def test_random_de_jonquieres_preserve_lines_through_center(seed):
    assert is_in_Jstar(random_de_jonquieres(random.Random(seed), 3)) is not None


@given(seeds)
def test_jcirc_quadratics_preserve_pencil(seed):
    f = random_jcirc_quadratic(random.Random(seed))
    assert f.degree == 2 and is_in_Jcirc(f) is not None


def test_quadratic_with_three_real_points():
    pts = [PointOrbit.of(ProjectivePoint(*c)) for c in ((1, 0, 0), (0, 1, 0), (1, 1, 1))]
    f = quadratic_with_base_points(pts)
    assert sorted(o for o, _ in proper_base_points(f)) == sorted(pts)


@pytest.mark.parametrize("p", QUINTIC_PAIRS[:3])
def test_standard_quintic_structure(p):
    q = standard_quintic(PointOrbit.of(p))
    assert q.degree == 5
    assert classify(q) is GeneratorTag.StandardQuintic
    assert is_in_Jcirc(q) is not None
    data = proper_base_points(q)
    assert all(m == 2 and not o.is_real for o, m in data)
    assert set(STANDARD_ORBITS) <= {o for o, _ in data}
    assert PointOrbit.of(p) in {o for o, _ in data}


@pytest.mark.parametrize("p", [(1, 2, 3), (2, -1, 5)])
def test_real_point_conic_bundle_link_is_cubic_with_inverse(p):
    f = conic_bundle_link(PointOrbit.of(ProjectivePoint(*p)))
    assert f.degree == 3 and is_in_Jcirc(f) is not None
    assert is_identity(compose(compose_word(f.inverse_hint), f))


def test_quintic_inverse_hint():
    q = standard_quintic(PointOrbit.of(QUINTIC_PAIRS[0]))
    assert is_identity(compose(inverse_of(q), q))


def test_pair_with_parameter_realizes_parameter():
    from cremona.exact_geometry import STANDARD_PENCIL, pencil_parameter
    t = GaussianRational(1, 2)
    o = pair_with_parameter(t)
    assert pencil_parameter(STANDARD_PENCIL, o.representative) in (t, t.conjugate())


def test_pair_with_real_parameter_rejected():
    with pytest.raises(ValidationError):
        pair_with_parameter(3)


def test_jcirc_quadratic_needs_real_point():
    with pytest.raises(ValidationError):
        jcirc_quadratic(PointOrbit.of(ProjectivePoint(1, GaussianRational(1, 1), 2)))
