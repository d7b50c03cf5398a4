"""Exact linear algebra over Q and Q(i), backed by sympy's DomainMatrix."""

from __future__ import annotations

from typing import List, Sequence

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .errors import ValidationError
from .exact_geometry import (
    GaussianRational,
    _from_domain_element,
    _to_domain_element,
    is_real_scalar,
)


def _domain_for(rows) -> object:
    for row in rows:
        for c in row:
            if not is_real_scalar(c):
                return QQ_I
    return QQ


def to_domain_matrix(rows: Sequence[Sequence], ncols: int = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    dom = _domain_for(rows)
    data = [[_to_domain_element(c, dom) for c in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), dom)


def from_domain_matrix(m: DomainMatrix) -> List[list]:
    dom = QQ if m.domain == QQ else QQ_I
    return [[_from_domain_element(c, dom) for c in row] for row in m.to_list()]


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[list]:
    """Basis of the right kernel, returned in reduced row echelon form."""
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    m = to_domain_matrix(rows, ncols)
    ns = m.nullspace()
    if ns.shape[0] == 0:
        return []
    return from_domain_matrix(ns.rref()[0])


def rref(rows: Sequence[Sequence]) -> List[list]:
    """Reduced row echelon form with zero rows removed."""
    m = to_domain_matrix(rows)
    r, pivots = m.rref()
    return from_domain_matrix(r)[:len(pivots)]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(to_domain_matrix(rows).rref()[1])


def inverse_matrix(rows: Sequence[Sequence]) -> List[list]:
    m = to_domain_matrix(rows)
    if m.det() == m.domain.zero:
        raise ValidationError("matrix is singular")
    return from_domain_matrix(m.inv())


def determinant(rows: Sequence[Sequence]):
    m = to_domain_matrix(rows)
    dom = QQ if m.domain == QQ else QQ_I
    return _from_domain_element(m.det(), dom)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[list]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), 0) for j in range(m)] for i in range(n)]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((row[t] * v[t] for t in range(len(v))), 0) for row in a]


def split_real_imag(rows: Sequence[Sequence]) -> List[list]:
    """Turn Gaussian linear equations in real unknowns into twice as many real ones."""
    out = []
    for row in rows:
        out.append([c.re if isinstance(c, GaussianRational) else c for c in row])
        if any(isinstance(c, GaussianRational) for c in row):
            out.append([c.im if isinstance(c, GaussianRational) else 0 for c in row])
    return out
