"""Exact rational polyhedral cone membership and extremal generators."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg

Vec = tuple[Fraction, ...]


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def in_cone(generators: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Nonnegative coefficients expressing ``v`` in the generators, or None.

    By Caratheodory a point of a cone lies in the cone over some linearly
    independent subset, which extends to a basis of the span; only such bases
    are tried.
    """
    gens = [_vec(g) for g in generators]
    v = _vec(v)
    if not any(v):
        return [Fraction(0)] * len(gens)
    gens_nz = [i for i, g in enumerate(gens) if any(g)]
    if not gens_nz:
        return None
    r = linalg.rank([gens[i] for i in gens_nz])
    if linalg.rank([gens[i] for i in gens_nz] + [v]) > r:
        return None
    for subset in combinations(gens_nz, r):
        cols = [gens[i] for i in subset]
        if linalg.rank(cols) < r:
            continue
        x = linalg.solve(linalg.transpose(cols), v, r)
        if x is None or any(c < 0 for c in x):
            continue
        out = [Fraction(0)] * len(gens)
        for i, c in zip(subset, x):
            out[i] = c
        return out
    return None


def extremal_generators(generators: Sequence[Sequence]) -> list[Vec]:
    """Primitive-direction generators of the cone, with redundant ones removed."""
    uniq: list[Vec] = []
    for g in generators:
        g = _vec(g)
        if not any(g):
            continue
        if any(_proportional(g, h) for h in uniq):
            continue
        uniq.append(g)
    keep = []
    for i, g in enumerate(uniq):
        others = [h for j, h in enumerate(uniq) if j != i]
        if others and in_cone(others, g) is not None:
            continue
        keep.append(g)
    return keep


def _proportional(g: Vec, h: Vec) -> bool:
    ratio = None
    for a, b in zip(g, h):
        if (a == 0) != (b == 0):
            return False
        if a:
            r = a / b
            if r <= 0 or (ratio is not None and r != ratio):
                return False
            ratio = r
    return True
