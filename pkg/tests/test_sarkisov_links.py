import random

import pytest
from hypothesis import given, strategies as st

from cremona.birational_maps import identity_map
from cremona.errors import ValidationError
from cremona.exact_geometry import PointOrbit
from cremona.generators import sigma, sigma_std, standard_quintic
from cremona.sampling import QUINTIC_PAIRS, random_de_jonquieres, random_three_real_quadratic
from cremona.sarkisov_links import (
    FibrationVertex,
    Link,
    LinkWord,
    decompose_de_jonquieres,
    elementary_target_index,
    f1_vertex,
    hirzebruch_index,
    p2_vertex,
    parity_rule_holds,
    quintic_to_c6_link,
    sigma_link_factorization,
    three_real_quadratic_path,
)

seeds = st.integers(0, 10_000)


def test_sigma_factors_through_the_quadric():
    w = sigma_link_factorization()
    assert w.kinds() == ("II", "II")
    assert w[0].target.surface == "Q"
    assert w.p2_composite() == sigma()


def test_three_real_quadratic_path_shape():
    w = three_real_quadratic_path(sigma_std())
    assert w.kinds() == ("I", "II", "II", "III")
    assert [v.surface for v in w.vertices()] == ["P2", "F1", "F0", "F1", "P2"]
    assert w.p2_composite() == sigma_std()


@given(seeds)
def test_three_real_path_recomposes(seed):
    f = random_three_real_quadratic(random.Random(seed))
    assert three_real_quadratic_path(f).p2_composite() == f


@given(seeds)
def test_de_jonquieres_decomposition(seed):
    f = random_de_jonquieres(random.Random(seed), 3)
    w = decompose_de_jonquieres(f)
    assert w.kinds()[0] == "I" and w.kinds()[-1] == "III"
    assert w.p2_composite() == f
    assert parity_rule_holds(w)


def test_elementary_index_rule():
    assert elementary_target_index(0, False) == 1
    assert elementary_target_index(1, True) == 2
    assert elementary_target_index(1, False) == 0


def test_links_must_chain():
    a = p2_vertex(identity_map())
    b = f1_vertex(identity_map())
    with pytest.raises(ValidationError):
        LinkWord((Link("I", a, b), Link("I", a, b)))


def test_link_kind_constraints():
    a = p2_vertex(identity_map())
    with pytest.raises(ValidationError):
        Link("I", a, a)
    with pytest.raises(ValidationError):
        Link("V", a, a)


def test_hirzebruch_index():
    assert hirzebruch_index(f1_vertex(identity_map())) == 1
    assert hirzebruch_index(p2_vertex(identity_map())) is None


def test_quintic_link_is_conic_bundle_link():
    q = standard_quintic(PointOrbit.of(QUINTIC_PAIRS[0]))
    l = quintic_to_c6_link(q)
    assert l.kind == "II" and l.source.surface == l.target.surface == "C6"
    assert l.fibre_parameter is not None


def test_quintic_link_rejects_other_maps():
    with pytest.raises(ValidationError):
        quintic_to_c6_link(sigma())


def test_records_have_fixed_keys():
    rec = sigma_link_factorization().to_records()[0]
    assert set(rec) == {"kind", "source", "target", "blown_up", "fibre_parameter"}


def test_vertex_rejects_unknown_surface():
    with pytest.raises(ValidationError):
        FibrationVertex("K3", "pt", 1, ())
