"""Exact rational linear algebra on lists of ``Fraction``.

Thin wrappers around sympy's ``DomainMatrix`` over QQ; callers only ever see
plain nested lists of ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]


class LinAlgError(ValueError):
    pass


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_to_qq(v) for v in r] for r in rows], (len(rows), ncols), QQ)


def from_dm(m: DomainMatrix) -> Matrix:
    return [[_from_qq(v) for v in row] for row in m.to_list()]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped."""
    if not rows:
        return [], ()
    r, pivots = to_dm(rows, ncols).rref()
    out = from_dm(r)[: len(pivots)]
    return out, tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    if n == 0:
        return []
    m = to_dm(rows, n)
    if m.det() == 0:
        raise LinAlgError("singular matrix")
    return from_dm(m.inv())


def det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _from_qq(to_dm(rows, len(rows)).det())


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis (as row vectors) of {x : rows . x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = to_dm(rows, ncols).nullspace()
    if ns.shape[0] == 0:
        return []
    return from_dm(ns)


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> list[Fraction] | None:
    """Some solution of rows . x = rhs, or None if inconsistent.

    Works for non-square and rank-deficient systems.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [r + [Fraction(b)] for r, b in zip(rows, rhs)]
    if not aug:
        return [Fraction(0)] * ncols
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bt] for r in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(r, v)), Fraction(0)) for r in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*a)]
