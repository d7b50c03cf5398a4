from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cremona.errors import ChartInfinity, ValidationError
from cremona.exact_geometry import (
    STANDARD_PENCIL,
    GaussianRational,
    HomogeneousPolynomial,
    PointOrbit,
    ProjectivePoint,
    X,
    Y,
    Z,
    are_collinear,
    conj,
    demote,
    exact_divide,
    factor_gaussian,
    factor_rational,
    from_sympy,
    pencil_parameter,
    poly_gcd,
    to_sympy,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, small, small)
nonzero_gaussians = gaussians.filter(lambda g: g != 0)


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert conj(a * b) == conj(a) * conj(b)


@given(nonzero_gaussians, gaussians)
def test_gaussian_division_inverts_multiplication(a, b):
    assert (b * a) / a == b


@given(small)
def test_real_values_demote_to_fraction(q):
    v = demote(GaussianRational(q, 0))
    assert not isinstance(v, GaussianRational)
    assert v == q


def test_demote_to_int():
    assert type(demote(GaussianRational(Fraction(4, 2), 0))) is int


@given(nonzero_gaussians, small, small, small)
def test_projective_point_is_scale_invariant(s, a, b, c):
    if a == b == c == 0:
        return
    p = ProjectivePoint(a, b, c)
    q = ProjectivePoint(a * s, b * s, c * s)
    assert p == q and hash(p) == hash(q)


def test_zero_point_rejected():
    with pytest.raises(ValidationError):
        ProjectivePoint(0, 0, 0)


def test_pair_orbit_is_canonical():
    p = ProjectivePoint(1, GaussianRational(0, 1), 0)
    assert PointOrbit.of(p) == PointOrbit.of(p.conjugate())
    assert len(PointOrbit.of(p).points()) == 2


def test_collinearity():
    assert are_collinear(ProjectivePoint(1, 0, 0), ProjectivePoint(0, 1, 0), ProjectivePoint(1, 1, 0))
    assert not are_collinear(ProjectivePoint(1, 0, 0), ProjectivePoint(0, 1, 0), ProjectivePoint(0, 0, 1))


coeff = st.integers(-4, 4)


def forms(degree):
    mons = [(a, b, degree - a - b) for a in range(degree + 1) for b in range(degree + 1 - a)]
    return st.lists(coeff, min_size=len(mons), max_size=len(mons)).map(
        lambda cs: HomogeneousPolynomial({m: c for m, c in zip(mons, cs) if c}, degree))


@given(forms(1), forms(2), forms(1))
def test_gcd_against_sympy(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    f, g = a * b, a * c
    ours = poly_gcd(f, g)
    x, y, z = sympy.symbols("x y z")
    theirs = sympy.gcd(to_sympy(f).as_expr(), to_sympy(g).as_expr())
    assert ours.degree == sympy.Poly(theirs, x, y, z).total_degree()
    assert exact_divide(f, ours) * ours == f


def test_sympy_round_trip():
    f = X * Z + (Y * Y).scale(3)
    assert from_sympy(to_sympy(f)) == f


def test_factorization_over_gaussians_splits_sum_of_squares():
    f = X * X + Y * Y
    assert [fac.degree for fac, _ in factor_rational(f) if fac.degree] == [2]
    assert sorted(fac.degree for fac, _ in factor_gaussian(f) if fac.degree) == [1, 1]


def test_pencil_parameter_places_point_on_member():
    q = ProjectivePoint(1, 2, 3)
    t = pencil_parameter(STANDARD_PENCIL, q)
    assert STANDARD_PENCIL.member(t).evaluate(q.coords) == 0


def test_pencil_parameter_chart_infinity():
    with pytest.raises(ChartInfinity):
        pencil_parameter(STANDARD_PENCIL, ProjectivePoint(0, 1, 0))


def test_pencil_base_point_rejected():
    with pytest.raises(ValidationError):
        pencil_parameter(STANDARD_PENCIL, ProjectivePoint(1, GaussianRational(0, 1), 0))
