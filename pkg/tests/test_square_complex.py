import random

import pytest

from cremona.birational_maps import is_automorphism, is_identity
from cremona.errors import DegenerateConfiguration, SymbolicOnly, ValidationError
from cremona.exact_geometry import GaussianRational, PointOrbit, ProjectivePoint
from cremona.sampling import random_disc_instance
from cremona.square_complex import (
    BoundarySegment,
    SingleVertex,
    corner_indices,
    instantiate,
    intersect_discs,
    schema,
    schema_catalog,
    verify_elementary_relation,
)


def real(*c):
    return PointOrbit.of(ProjectivePoint(*c))


def pair(*c):
    return PointOrbit.of(ProjectivePoint(*c))


R = real(1, 2, 3)
S = pair(1, GaussianRational(1, 1), 2)


def test_catalog_has_six_schemas():
    assert [s.id for s in schema_catalog()] == ["D1", "D2", "D3", "D4", "D5", "D6"]


def test_mark_patterns():
    assert set(schema("D4").labelled_marks()) == {2}
    assert set(schema("D5").labelled_marks()) == {1}
    assert set(schema("D1").labelled_marks()) == {1, 2}


@pytest.mark.parametrize("sid", ["D1", "D2", "D3", "D4", "D5", "D6"])
def test_cycles_alternate_rank(sid):
    cyc = schema(sid).vertex_cycle
    assert len(cyc) % 2 == 0
    assert [v.rank for v in cyc] == [1, 2] * (len(cyc) // 2)


def test_unknown_schema():
    with pytest.raises(ValidationError):
        schema("D7")


def test_d1_with_sigma_data_closes_to_identity():
    inst = instantiate(schema("D1"), [real(0, 0, 1), pair(1, GaussianRational(0, 1), 0)])
    assert is_identity(verify_elementary_relation(inst))


@pytest.mark.parametrize("sid", ["D1", "D2", "D5", "D6"])
def test_concrete_discs_close_up_to_automorphism(sid):
    inst = random_disc_instance(sid, random.Random(11))
    alpha = verify_elementary_relation(inst)
    assert is_automorphism(alpha)


def test_d2_mixed_data():
    inst = instantiate(schema("D2"), [R, pair(1, GaussianRational(2, 1), GaussianRational(0, 1))])
    assert is_automorphism(verify_elementary_relation(inst))


def test_d6_real_corners():
    inst = instantiate(schema("D6"), [real(1, 0, 1), real(0, 1, 2)])
    assert corner_indices(inst) == [1, 0, 1, 0, 1]


def test_d6_mixed_is_symbolic():
    inst = instantiate(schema("D6"), [R, S])
    assert not inst.concrete
    with pytest.raises(SymbolicOnly):
        verify_elementary_relation(inst)


@pytest.mark.parametrize("sid,data", [("D3", [R]), ("D4", [S])])
def test_symbolic_schemas(sid, data):
    inst = instantiate(schema(sid), data)
    with pytest.raises(SymbolicOnly):
        verify_elementary_relation(inst)


def test_wrong_data_count():
    with pytest.raises(ValidationError):
        instantiate(schema("D1"), [R])


def test_d1_collinear_data_rejected():
    s = pair(1, GaussianRational(0, 1), 0)
    with pytest.raises(DegenerateConfiguration):
        instantiate(schema("D1"), [real(1, 0, 0), s])


def test_d5_needs_two_real_points():
    with pytest.raises(ValidationError):
        instantiate(schema("D5"), [R, S])


def test_d1_discs_with_disjoint_data_meet_in_the_plane():
    a = instantiate(schema("D1"), [R, S])
    b = instantiate(schema("D1"), [real(2, -1, 5), pair(1, GaussianRational(0, 2), 3)])
    got = intersect_discs(a, b)
    assert isinstance(got, SingleVertex) and got.vertex.surface == "P2"


def test_d1_discs_sharing_the_pair_meet_along_the_quadric_route():
    a = instantiate(schema("D1"), [R, S])
    b = instantiate(schema("D1"), [real(2, -1, 5), S])
    got = intersect_discs(a, b)
    assert isinstance(got, BoundarySegment)
    assert {v.surface for v in got.ends} == {"P2", "Q"}


def test_d1_and_d5_share_a_boundary_segment():
    a = instantiate(schema("D1"), [R, S])
    b = instantiate(schema("D5"), [R, real(2, -1, 5)])
    got = intersect_discs(a, b)
    assert isinstance(got, BoundarySegment)
    assert got.middle.rank == 2


def test_disc_record():
    rec = instantiate(schema("D5"), [R, real(2, -1, 5)]).to_record()
    assert rec["schema"] == "D5" and rec["concrete"] is True
    assert len(rec["boundary"]) == 4
