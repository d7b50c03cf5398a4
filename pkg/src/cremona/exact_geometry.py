"""Exact scalars, ternary forms, projective points and the standard conic pencil.

Coefficients live in the Gaussian rationals Q(i).  To keep the common case
fast, every coefficient is stored in its smallest exact type: an ``int`` when
it is an integer, a ``Fraction`` when it is rational, and a
``GaussianRational`` only when the imaginary part is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Dict, Iterable, Sequence, Tuple, Union

import flint
from sympy import Poly, QQ, QQ_I, symbols

from .errors import ChartInfinity, ValidationError

Rational = Fraction
Exponent = Tuple[int, int, int]

_X, _Y, _Z = symbols("x y z")
GENS = (_X, _Y, _Z)
VARIABLE_NAMES = ("x", "y", "z")


class GaussianRational:
    """An exact number a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _parts(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return other, 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return demote(GaussianRational(self.re + p[0], self.im + p[1]))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return demote(GaussianRational(self.re - p[0], self.im - p[1]))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return demote(GaussianRational(p[0] - self.re, p[1] - self.im))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return demote(GaussianRational(self.re * other, self.im * other))
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return demote(GaussianRational(a * c - b * d, a * d + b * c))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return demote(GaussianRational(self.re / n, -self.im / n))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return demote(GaussianRational(self.re / other, self.im / other))
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        result = 1
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, GaussianRational]


def demote(c) -> Scalar:
    """Return ``c`` in its smallest exact representation."""
    if isinstance(c, GaussianRational):
        if c.im != 0:
            return c
        c = c.re
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"not an exact scalar: {c!r}")


def scalar(c) -> Scalar:
    """Coerce ints, Fractions, Gaussian rationals and numeric strings."""
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, (int, Fraction, GaussianRational)):
        return demote(c)
    if isinstance(c, str):
        return demote(Fraction(c))
    raise TypeError(f"not an exact scalar: {c!r}")


def re_part(c) -> Fraction:
    return c.re if isinstance(c, GaussianRational) else Fraction(c)


def im_part(c) -> Fraction:
    return c.im if isinstance(c, GaussianRational) else Fraction(0)


def conj(c) -> Scalar:
    return c.conjugate() if isinstance(c, GaussianRational) else c


def is_real_scalar(c) -> bool:
    return not isinstance(c, GaussianRational)


def inverse(c) -> Scalar:
    if isinstance(c, GaussianRational):
        return c.inverse()
    if c == 0:
        raise ZeroDivisionError("inverse of zero")
    return demote(Fraction(1) / c)


def _fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Text form readable by the polynomial grammar, e.g. ``3/2``, ``1+2*i``, ``-i``."""
    if not isinstance(c, GaussianRational):
        return _fmt_rational(Fraction(c))
    re, im = c.re, c.im
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_rational(im)}*i"
    if re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_fmt_rational(re)}{sign}{imag}"


I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# homogeneous forms
# ---------------------------------------------------------------------------

def _poly_mul(a: Dict, b: Dict) -> Dict:
    out: Dict = {}
    get = out.get
    for (a0, a1, a2), ca in a.items():
        for (b0, b1, b2), cb in b.items():
            key = (a0 + b0, a1 + b1, a2 + b2)
            out[key] = get(key, 0) + ca * cb
    return {k: demote(v) if isinstance(v, GaussianRational) else v for k, v in out.items() if v}


def _add_scaled(acc: Dict, a: Dict, c) -> None:
    get = acc.get
    for k, v in a.items():
        acc[k] = get(k, 0) + c * v


def _clean(d: Dict) -> Dict:
    out = {}
    for k, v in d.items():
        if v:
            out[k] = demote(v)
    return out


@total_ordering
class HomogeneousPolynomial:
    """A homogeneous form in x, y, z with Gaussian-rational coefficients."""

    __slots__ = ("degree", "coeffs", "_hash")

    def __init__(self, coeffs: Dict[Exponent, Scalar] = None, degree: int = None):
        coeffs = _clean(coeffs or {})
        degs = {sum(e) for e in coeffs}
        if len(degs) > 1:
            raise ValidationError(f"form is not homogeneous (degrees {sorted(degs)})")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValidationError(f"stated degree {degree} but terms have degree {d}")
            degree = d
        if degree is None or degree < 0:
            raise ValidationError("the zero form needs an explicit non-negative degree")
        for e in coeffs:
            if len(e) != 3 or min(e) < 0:
                raise ValidationError(f"bad exponent triple {e}")
        self.degree = degree
        self.coeffs = coeffs
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPolynomial":
        return cls({}, degree)

    @classmethod
    def constant(cls, c) -> "HomogeneousPolynomial":
        return cls({(0, 0, 0): scalar(c)}, 0)

    @classmethod
    def variable(cls, index: int) -> "HomogeneousPolynomial":
        e = [0, 0, 0]
        e[index] = 1
        return cls({tuple(e): 1}, 1)

    @classmethod
    def _raw(cls, coeffs: Dict, degree: int) -> "HomogeneousPolynomial":
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # basic predicates
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(not isinstance(c, GaussianRational) for c in self.coeffs.values())

    def monomials(self):
        """Exponents in graded-lex descending order (x > y > z)."""
        return sorted(self.coeffs, reverse=True)

    def leading_monomial(self) -> Exponent:
        if not self.coeffs:
            raise ValidationError("zero form has no leading monomial")
        return max(self.coeffs)

    def leading_coefficient(self) -> Scalar:
        return self.coeffs[self.leading_monomial()]

    # arithmetic
    def _check_same_degree(self, other):
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValidationError(f"cannot add forms of degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        self._check_same_degree(other)
        acc = dict(self.coeffs)
        _add_scaled(acc, other.coeffs, 1)
        return HomogeneousPolynomial(acc, self.degree if self.coeffs else other.degree)

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        self._check_same_degree(other)
        acc = dict(self.coeffs)
        _add_scaled(acc, other.coeffs, -1)
        return HomogeneousPolynomial(acc, self.degree if self.coeffs else other.degree)

    def __neg__(self):
        return HomogeneousPolynomial._raw({k: -v for k, v in self.coeffs.items()}, self.degree)

    def scale(self, c) -> "HomogeneousPolynomial":
        c = scalar(c)
        if c == 0:
            return HomogeneousPolynomial.zero(self.degree)
        return HomogeneousPolynomial._raw(
            {k: demote(v * c) for k, v in self.coeffs.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            return HomogeneousPolynomial._raw(_poly_mul(self.coeffs, other.coeffs),
                                              self.degree + other.degree)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative power of a form")
        result = HomogeneousPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial._raw({k: conj(v) for k, v in self.coeffs.items()}, self.degree)

    def real_part(self) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial({k: re_part(v) for k, v in self.coeffs.items()}, self.degree)

    def imag_part(self) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial({k: im_part(v) for k, v in self.coeffs.items()}, self.degree)

    def monic(self) -> "HomogeneousPolynomial":
        """Scale so that the leading coefficient (graded-lex) is 1."""
        if not self.coeffs:
            return self
        return self.scale(inverse(self.leading_coefficient()))

    def evaluate(self, point: Sequence) -> Scalar:
        x, y, z = (scalar(c) for c in point)
        px, py, pz = [1], [1], [1]
        for _ in range(self.degree):
            px.append(px[-1] * x)
            py.append(py[-1] * y)
            pz.append(pz[-1] * z)
        total = 0
        for (i, j, k), c in self.coeffs.items():
            total = total + c * px[i] * py[j] * pz[k]
        return demote(total) if isinstance(total, (Fraction, GaussianRational)) else total

    def partial(self, index: int) -> "HomogeneousPolynomial":
        out = {}
        for e, c in self.coeffs.items():
            n = e[index]
            if n:
                f = list(e)
                f[index] -= 1
                out[tuple(f)] = c * n
        return HomogeneousPolynomial(out, max(self.degree - 1, 0))

    def substitute(self, forms: Sequence["HomogeneousPolynomial"]) -> "HomogeneousPolynomial":
        return substitute_all([self], forms)[0]

    def coefficient_vector(self, monomial_list: Sequence[Exponent]):
        return [self.coeffs.get(m, 0) for m in monomial_list]

    # comparison and hashing
    def __eq__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.degree, [(m, _scalar_key(self.coeffs[m])) for m in self.monomials()])

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"HomogeneousPolynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def _scalar_key(c):
    return (re_part(c), im_part(c))


def monomials_of_degree(d: int):
    """All exponent triples of degree d in graded-lex descending order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def substitute_all(polys: Sequence[HomogeneousPolynomial],
                   forms: Sequence[HomogeneousPolynomial]):
    """Substitute (x, y, z) := forms into each polynomial, sharing power tables."""
    if len(forms) != 3:
        raise ValidationError("substitution needs three forms")
    degs = {f.degree for f in forms if not f.is_zero()}
    if len(degs) > 1:
        raise ValidationError("substituted forms must share one degree")
    e = degs.pop() if degs else forms[0].degree
    if all(f.is_real() for f in forms) and all(p.is_real() for p in polys):
        fl = [to_flint(f) for f in forms]
        return [from_flint(to_flint(p).compose(*fl), p.degree * e) for p in polys]
    powers = [[{(0, 0, 0): 1}] for _ in range(3)]
    top = max((p.degree for p in polys), default=0)
    for idx in range(3):
        for _ in range(top):
            powers[idx].append(_poly_mul(powers[idx][-1], forms[idx].coeffs))
    xy_cache: Dict = {}
    results = []
    for p in polys:
        acc: Dict = {}
        for (i, j, k), c in p.coeffs.items():
            key = (i, j)
            xy = xy_cache.get(key)
            if xy is None:
                xy = _poly_mul(powers[0][i], powers[1][j])
                xy_cache[key] = xy
            _add_scaled(acc, _poly_mul(xy, powers[2][k]), c)
        results.append(HomogeneousPolynomial(acc, p.degree * e))
    return results


def format_polynomial(f: HomogeneousPolynomial) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m in f.monomials():
        c = f.coeffs[m]
        mono = "*".join(
            (VARIABLE_NAMES[v] if m[v] == 1 else f"{VARIABLE_NAMES[v]}^{m[v]}")
            for v in range(3) if m[v])
        if isinstance(c, GaussianRational):
            text = format_scalar(c)
            neg = False
            if c.re == 0 and c.im < 0:
                neg, text = True, format_scalar(-c)
            elif c.re < 0:
                neg, text = True, format_scalar(-c)
            if c.re != 0:
                text = f"({text})"
            body = f"{text}*{mono}" if mono else text
        else:
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


X = HomogeneousPolynomial.variable(0)
Y = HomogeneousPolynomial.variable(1)
Z = HomogeneousPolynomial.variable(2)


# ---------------------------------------------------------------------------
# bridge to python-flint (real forms: substitution, gcd, exact division)
# ---------------------------------------------------------------------------

_FLINT_CTX = flint.fmpq_mpoly_ctx.get(("x", "y", "z"), "lex")


def to_flint(f: HomogeneousPolynomial):
    """A real form as a flint polynomial over Q."""
    return _FLINT_CTX.from_dict({e: flint.fmpq(c.numerator, c.denominator) if isinstance(c, Fraction)
                                 else c for e, c in f.coeffs.items()})


def from_flint(p, degree: int) -> HomogeneousPolynomial:
    data = {}
    for e, c in p.terms():
        q = c.q
        data[tuple(int(k) for k in e)] = int(c.p) if q == 1 else Fraction(int(c.p), int(q))
    return HomogeneousPolynomial._raw(data, degree)


# ---------------------------------------------------------------------------
# bridge to sympy (Gaussian gcd and division, factorization)
# ---------------------------------------------------------------------------

def _to_domain_element(c, domain):
    if domain is QQ:
        c = Fraction(c)
        return QQ(c.numerator, c.denominator)
    re, im = re_part(c), im_part(c)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def _from_mpq(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _from_domain_element(c, domain) -> Scalar:
    if domain is QQ:
        return demote(_from_mpq(c))
    return demote(GaussianRational(_from_mpq(c.x), _from_mpq(c.y)))


def to_sympy(f: HomogeneousPolynomial, domain=None) -> Poly:
    if domain is None:
        domain = QQ if f.is_real() else QQ_I
    data = {e: _to_domain_element(c, domain) for e, c in f.coeffs.items()}
    if not data:
        return Poly.from_dict({(0, 0, 0): domain.zero}, *GENS, domain=domain)
    return Poly.from_dict(data, *GENS, domain=domain)


def from_sympy(p: Poly, degree: int = None) -> HomogeneousPolynomial:
    domain = QQ if p.domain == QQ else QQ_I
    if p.domain not in (QQ, QQ_I):
        p = p.set_domain(QQ_I if p.domain.is_Exact and not p.domain.is_RealField else QQ)
        domain = p.domain
    data = {e: _from_domain_element(c, domain) for e, c in p.as_dict(native=True).items()}
    data = {e: c for e, c in data.items() if c}
    if not data:
        return HomogeneousPolynomial.zero(degree if degree is not None else 0)
    return HomogeneousPolynomial(data)


def _common_domain(*fs):
    return QQ if all(f.is_real() for f in fs) else QQ_I


def poly_gcd(f: HomogeneousPolynomial, g: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Monic gcd over Q(i).  Delegates to sympy's multivariate gcd."""
    if f.is_zero() and g.is_zero():
        raise ValidationError("gcd of two zero forms")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_real() and g.is_real():
        h = to_flint(f).gcd(to_flint(g))
        return from_flint(h, int(h.total_degree())).monic()
    dom = _common_domain(f, g)
    h = to_sympy(f, dom).gcd(to_sympy(g, dom))
    return from_sympy(h).monic()


def poly_gcd_many(forms: Iterable[HomogeneousPolynomial]) -> HomogeneousPolynomial:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValidationError("gcd of zero forms")
    g = forms[0].monic()
    for f in forms[1:]:
        if g.degree == 0:
            break
        g = poly_gcd(g, f)
    return g


def exact_divide(f: HomogeneousPolynomial, g: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """f / g, raising if the division leaves a remainder."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if g.degree == 0:
        return f.scale(inverse(g.coeffs[(0, 0, 0)]))
    if f.is_real() and g.is_real():
        q, r = divmod(to_flint(f), to_flint(g))
        if r != 0:
            raise ValidationError("division is not exact")
        return from_flint(q, f.degree - g.degree)
    dom = _common_domain(f, g)
    q, r = to_sympy(f, dom).div(to_sympy(g, dom))
    if not r.is_zero:
        raise ValidationError("division is not exact")
    return from_sympy(q, f.degree - g.degree)


def remainder(f: HomogeneousPolynomial, g: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Normal form of f modulo the principal ideal (g), lex order x > y > z."""
    dom = _common_domain(f, g)
    _, r = to_sympy(f, dom).div(to_sympy(g, dom))
    return from_sympy(r, f.degree)


def factor_rational(f: HomogeneousPolynomial):
    """Irreducible factors over Q of a real form, as (monic factor, multiplicity)."""
    if not f.is_real():
        raise ValidationError("factor_rational needs a real form")
    _, facs = to_sympy(f, QQ).factor_list()
    return [(from_sympy(p).monic(), m) for p, m in facs]


def factor_gaussian(f: HomogeneousPolynomial):
    """Irreducible factors over Q(i), as (monic factor, multiplicity)."""
    _, facs = to_sympy(f, QQ_I).factor_list()
    return [(from_sympy(p).monic(), m) for p, m in facs]


def determinant3(m) -> object:
    """Determinant of a 3x3 matrix of scalars or forms."""
    (a, b, c), (d, e, f), (g, h, k) = m
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g)


def jacobian_determinant(components: Sequence[HomogeneousPolynomial]) -> HomogeneousPolynomial:
    rows = [[f.partial(j) for j in range(3)] for f in components]
    return determinant3(rows)


# ---------------------------------------------------------------------------
# projective points and Galois orbits
# ---------------------------------------------------------------------------

@total_ordering
class ProjectivePoint:
    """A point of P^2 over Q(i), stored with first nonzero coordinate equal to 1."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValidationError("a projective point needs three coordinates")
        cs = [scalar(c) for c in coords]
        pivot = next((c for c in cs if c != 0), None)
        if pivot is None:
            raise ValidationError("[0:0:0] is not a projective point")
        inv = inverse(pivot)
        self.coords = tuple(demote(c * inv) for c in cs)

    def conjugate(self) -> "ProjectivePoint":
        return ProjectivePoint(*(conj(c) for c in self.coords))

    def is_real(self) -> bool:
        return all(is_real_scalar(c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return tuple(_scalar_key(c) for c in self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"ProjectivePoint({self})"

    def __str__(self):
        return "[" + ":".join(format_scalar(c) for c in self.coords) + "]"


def conjugate_point(p: ProjectivePoint) -> ProjectivePoint:
    return p.conjugate()


def real_and_imaginary_vectors(p: ProjectivePoint):
    return [re_part(c) for c in p.coords], [im_part(c) for c in p.coords]


def _pair_canonical(p: ProjectivePoint) -> ProjectivePoint:
    """Pick the member of {p, conj(p)} whose first non-real coordinate has im > 0."""
    for c in p.coords:
        if isinstance(c, GaussianRational):
            return p if c.im > 0 else p.conjugate()
    raise ValidationError("point is real")


@dataclass(frozen=True, order=False)
class PointOrbit:
    """A Galois orbit: one real point, or a pair of conjugate non-real points."""

    kind: str  # "Real" or "ConjugatePair"
    representative: ProjectivePoint

    def __post_init__(self):
        rep = self.representative
        if self.kind == "Real":
            if not rep.is_real():
                raise ValidationError(f"{rep} is not real")
        elif self.kind == "ConjugatePair":
            if rep.is_real():
                raise ValidationError(f"{rep} is real, not part of a conjugate pair")
            object.__setattr__(self, "representative", _pair_canonical(rep))
        else:
            raise ValidationError(f"unknown orbit kind {self.kind!r}")

    @classmethod
    def of(cls, p: ProjectivePoint) -> "PointOrbit":
        return cls("Real" if p.is_real() else "ConjugatePair", p)

    @property
    def is_real(self) -> bool:
        return self.kind == "Real"

    def points(self):
        if self.is_real:
            return (self.representative,)
        return (self.representative, self.representative.conjugate())

    def size(self) -> int:
        return 1 if self.is_real else 2

    def sort_key(self):
        return (0 if self.is_real else 1, self.representative.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.is_real:
            return f"Real {self.representative}"
        return f"ConjugatePair {self.representative}"


def cross(u: Sequence, v: Sequence):
    return (demote(u[1] * v[2] - u[2] * v[1]),
            demote(u[2] * v[0] - u[0] * v[2]),
            demote(u[0] * v[1] - u[1] * v[0]))


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> HomogeneousPolynomial:
    """Monic linear form vanishing at two distinct points."""
    if p == q:
        raise ValidationError("line_through needs two distinct points")
    a, b, c = cross(p.coords, q.coords)
    return HomogeneousPolynomial({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1).monic()


def are_collinear(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    return determinant3([p.coords, q.coords, r.coords]) == 0


# ---------------------------------------------------------------------------
# the standard pencil of conics
# ---------------------------------------------------------------------------

P1 = ProjectivePoint(1, I, 0)
P2 = ProjectivePoint(0, 1, I)


@dataclass(frozen=True)
class ConicPencil:
    c1: HomogeneousPolynomial
    c2: HomogeneousPolynomial
    base_orbits: Tuple[PointOrbit, PointOrbit]

    def base_points(self):
        return [p for o in self.base_orbits for p in o.points()]

    def member(self, t) -> HomogeneousPolynomial:
        """The conic t*c1 + c2."""
        return self.c1.scale(t) + self.c2


def standard_pencil() -> ConicPencil:
    """Conics through [1:i:0], [1:-i:0], [0:1:i], [0:1:-i]."""
    p1, p1b = P1, P1.conjugate()
    p2, p2b = P2, P2.conjugate()
    c1 = line_through(p1, p1b) * line_through(p2, p2b)
    c2 = line_through(p1, p2) * line_through(p1b, p2b)
    c2 = c2.scale(inverse(c2.coeffs[(0, 2, 0)]))
    return ConicPencil(c1, c2, (PointOrbit("ConjugatePair", p1), PointOrbit("ConjugatePair", p2)))


STANDARD_PENCIL = standard_pencil()


def pencil_parameter(pencil: ConicPencil, q: ProjectivePoint) -> Scalar:
    """t = -c2(q)/c1(q), so that q lies on t*c1 + c2."""
    a = pencil.c1.evaluate(q.coords)
    b = pencil.c2.evaluate(q.coords)
    if a == 0 and b == 0:
        raise ValidationError(f"{q} is a base point of the pencil")
    if a == 0:
        raise ChartInfinity(f"{q} lies on c1 = 0, the infinity of the pencil chart")
    return demote(-b * inverse(a))
