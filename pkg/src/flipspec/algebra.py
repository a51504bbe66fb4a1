"""Finite-dimensional graded commutative algebras with an integration functional.

Both the toric rings and the projective-bundle towers are materialized into a
``GradedAlgebra``: a basis of monomials in a list of degree-one generators, a
sparse structure-constant table, and the top-degree integral.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg

Scalar = int | Fraction


class GradedAlgebra:
    """Commutative graded algebra with basis ``b_0 = 1, b_1, ...``.

    ``basis_exps[i]`` writes ``b_i`` as a monomial in ``gen_names``; every
    generator has degree one (complex grading), so ``degrees[i]`` is the total
    exponent.  ``table[(i, j)]`` lists ``(k, c)`` with ``b_i b_j = sum c b_k``.
    """

    def __init__(
        self,
        name: str,
        gen_names: Sequence[str],
        basis_exps: Sequence[tuple[int, ...]],
        table: Mapping[tuple[int, int], Sequence[tuple[int, Fraction]]],
        top: Sequence[Fraction],
        gen_images: Sequence[Sequence[Fraction]],
    ):
        self.name = name
        self.gen_names = tuple(gen_names)
        self.basis_exps = tuple(tuple(e) for e in basis_exps)
        self.degrees = tuple(sum(e) for e in self.basis_exps)
        self.table = dict(table)
        self.top = tuple(Fraction(t) for t in top)
        self._gen_vecs = [tuple(Fraction(c) for c in v) for v in gen_images]
        self.dim = max(self.degrees) if self.degrees else 0
        if self.basis_exps[0] != (0,) * len(self.gen_names):
            raise ValueError("basis must start with the unit")

    def __repr__(self) -> str:
        return f"<GradedAlgebra {self.name} betti={self.betti}>"

    # construction helpers
    @property
    def rank(self) -> int:
        return len(self.basis_exps)

    @cached_property
    def betti(self) -> tuple[int, ...]:
        out = [0] * (self.dim + 1)
        for d in self.degrees:
            out[d] += 1
        return tuple(out)

    def basis_name(self, i: int) -> str:
        parts = []
        for g, e in zip(self.gen_names, self.basis_exps[i]):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts) or "1"

    def zero(self) -> "Elem":
        return Elem(self, (Fraction(0),) * self.rank)

    def one(self) -> "Elem":
        return self.basis(0)

    def basis(self, i: int) -> "Elem":
        v = [Fraction(0)] * self.rank
        v[i] = Fraction(1)
        return Elem(self, tuple(v))

    def basis_elems(self) -> list["Elem"]:
        return [self.basis(i) for i in range(self.rank)]

    def from_vector(self, v: Sequence[Scalar]) -> "Elem":
        if len(v) != self.rank:
            raise ValueError("vector length does not match the basis")
        return Elem(self, tuple(Fraction(c) for c in v))

    def gen(self, name_or_index: str | int) -> "Elem":
        i = name_or_index if isinstance(name_or_index, int) else self.gen_names.index(name_or_index)
        return Elem(self, self._gen_vecs[i])

    def gens(self) -> list["Elem"]:
        return [Elem(self, v) for v in self._gen_vecs]

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, k in enumerate(self.degrees) if k == d]

    # integration and pairing
    def integrate(self, a: "Elem") -> Fraction:
        return sum((c * t for c, t in zip(a.coeffs, self.top) if c and t), Fraction(0))

    @cached_property
    def pairing_matrix(self) -> list[list[Fraction]]:
        bs = self.basis_elems()
        return [[self.integrate(x * y) for y in bs] for x in bs]

    @cached_property
    def pairing_inverse(self) -> list[list[Fraction]]:
        return linalg.inverse(self.pairing_matrix)

    def dual_coordinates(self, values: Sequence[Scalar]) -> "Elem":
        """The class ``a`` with ``int a * b_j = values[j]`` for every j."""
        return self.from_vector(linalg.matvec(self.pairing_inverse, values))

    def hom(self, target: "GradedAlgebra", images: Sequence["Elem"]) -> "RingMap":
        """Ring map sending generator ``i`` to ``images[i]``."""
        if len(images) != len(self.gen_names):
            raise ValueError("one image per generator required")
        cols = []
        for exps in self.basis_exps:
            x = target.one()
            for img, e in zip(images, exps):
                for _ in range(e):
                    x = x * img
            cols.append(x)
        return RingMap(self, target, cols)

    def identity(self) -> "RingMap":
        return RingMap(self, self, self.basis_elems())

    def check_associative(self) -> bool:
        bs = self.basis_elems()
        for x in bs:
            for y in bs:
                if x * y != y * x:
                    return False
                for z in bs:
                    if (x * y) * z != x * (y * z):
                        return False
        return True


class Elem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GradedAlgebra, coeffs: tuple[Fraction, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other: "Elem") -> None:
        if other.ring is not self.ring:
            raise ValueError(f"elements of different rings: {self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        self._check(other)
        return Elem(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Elem(self.ring, tuple(a * c for a in self.coeffs))
        self._check(other)
        out = [Fraction(0)] * self.ring.rank
        table = self.ring.table
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                for k, c in table.get((i, j), ()):
                    out[k] += a * b * c
        return Elem(self.ring, tuple(out))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        x = self.ring.one()
        for _ in range(n):
            x = x * self
        return x

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        if not isinstance(other, Elem) or other.ring is not self.ring:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def homogeneous(self, d: int) -> "Elem":
        return Elem(self.ring, tuple(c if k == d else Fraction(0) for c, k in zip(self.coeffs, self.ring.degrees)))

    def degrees_present(self) -> list[int]:
        return sorted({k for c, k in zip(self.coeffs, self.ring.degrees) if c})

    def constant(self) -> Fraction:
        return self.coeffs[0]

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*{self.ring.basis_name(i)}")
        return " + ".join(terms) if terms else "0"


class RingMap:
    """Linear map between algebras given by the images of source basis elements."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, images: Sequence[Elem]):
        self.source = source
        self.target = target
        self.images = list(images)

    def __call__(self, a: Elem) -> Elem:
        if a.ring is not self.source:
            raise ValueError("element not in the source ring")
        out = self.target.zero()
        for c, img in zip(a.coeffs, self.images):
            if c:
                out = out + img * c
        return out

    def compose(self, first: "RingMap") -> "RingMap":
        """``self o first``."""
        return RingMap(first.source, self.target, [self(x) for x in first.images])

    def matrix(self) -> list[list[Fraction]]:
        """Columns are images of source basis vectors."""
        return linalg.transpose([list(img.coeffs) for img in self.images])

    def is_multiplicative(self) -> bool:
        bs = self.source.basis_elems()
        return all(self(x * y) == self(x) * self(y) for x in bs for y in bs)

    def pushforward(self, a: Elem) -> Elem:
        """Pairing adjoint: ``int_source f_*(a) b = int_target a f^*(b)``."""
        if a.ring is not self.target:
            raise ValueError("element not in the target ring")
        values = [self.target.integrate(a * img) for img in self.images]
        return self.source.dual_coordinates(values)


def linear_combination(ring: GradedAlgebra, terms: Iterable[tuple[Scalar, Elem]]) -> Elem:
    out = ring.zero()
    for c, e in terms:
        out = out + e * Fraction(c)
    return out
