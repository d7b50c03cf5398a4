import random

import pytest
from hypothesis import given, strategies as st

from cremona.errors import ParseError, ValidationError
from cremona.exact_geometry import GaussianRational, ProjectivePoint
from cremona.generators import sigma, sigma_std
from cremona.parsing import emit_map, parse_map, parse_map_with_notices, parse_maps, parse_orbits, parse_point
from cremona.sampling import random_de_jonquieres, random_sigma_type, random_three_real_quadratic

seeds = st.integers(0, 10_000)


def test_sigma_text():
    assert parse_map("[x*z : y*z : x^2+y^2]") == sigma()


def test_sigma_std_text():
    assert parse_map("[y*z : x*z : x*y]") == sigma_std()


def test_pencil_conic_text():
    f = parse_map("[x*z : y*z : (x-z)^2+y^2]")
    assert f.degree == 2


def test_non_dominant_rejected():
    with pytest.raises(ValidationError, match="Jacobian"):
        parse_map("[x : x : z]")


def test_non_real_coefficient_rejected_with_position():
    with pytest.raises(ParseError) as e:
        parse_map("[x : i*y : z]")
    assert e.value.position == 5


def test_syntax_error_position():
    with pytest.raises(ParseError) as e:
        parse_map("[x : y z]")
    assert e.value.position == 7


def test_mixed_degrees_rejected():
    with pytest.raises(ParseError):
        parse_map("[x : y^2 : z]")


def test_common_factor_removed_with_notice():
    parsed = parse_map_with_notices("[x^2 : x*y : x*z]")
    assert parsed.map == parse_map("[x : y : z]")
    assert parsed.notices


def test_rational_coefficients():
    f = parse_map("[x/2 : y : z]")
    assert f.matrix()[0][0] * 2 == f.matrix()[1][1]


@given(seeds)
def test_round_trip(seed):
    rng = random.Random(seed)
    for f in (random_sigma_type(rng), random_three_real_quadratic(rng), random_de_jonquieres(rng, 3)):
        text = emit_map(f)
        assert parse_map(text) == f
        assert emit_map(parse_map(text)) == text


def test_several_maps():
    assert [p.map for p in parse_maps("[x*z : y*z : x^2+y^2] [y*z : x*z : x*y]")] == [sigma(), sigma_std()]


def test_points_and_orbits():
    assert parse_point("[1 : i : 0]") == ProjectivePoint(1, GaussianRational(0, 1), 0)
    orbits = parse_orbits("[0:0:1] [1:-i:0]")
    assert [o.kind for o in orbits] == ["Real", "ConjugatePair"]
