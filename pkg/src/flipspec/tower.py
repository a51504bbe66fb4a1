"""Projective bundles of split bundles as ``H*(B)[h] / (sum c_i(V) h^(r-i))``.

Convention: ``P(V)`` parametrizes lines and ``h = c_1(O(1))``, so the relation
is ``prod_i (h + delta_i) = 0`` for ``V = sum O(delta_i)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .algebra import Elem, GradedAlgebra, RingMap


def elementary_symmetric(ring: GradedAlgebra, roots: Sequence[Elem]) -> list[Elem]:
    """``[e_0, ..., e_r]`` of the given classes."""
    e = [ring.one()] + [ring.zero()] * len(roots)
    for x in roots:
        for k in range(len(e) - 1, 0, -1):
            e[k] = e[k] + e[k - 1] * x
    return e


class TowerRing:
    def __init__(self, base: GradedAlgebra, degrees: Sequence[Elem], name: str = "P", h_name: str = "h"):
        if len(degrees) == 0:
            raise ValueError("bundle rank must be positive")
        for d in degrees:
            if d.ring is not base:
                raise ValueError("degree classes must live in the base ring")
        self.base = base
        self.degrees = list(degrees)
        self.r = len(degrees)
        self.name = name
        self.chern = elementary_symmetric(base, self.degrees)
        r, nb = self.r, base.rank
        basis_exps = [e + (i,) for i in range(r) for e in base.basis_exps]
        # index of (base index a, h power i)
        order = sorted(range(len(basis_exps)), key=lambda k: (sum(basis_exps[k]), k))
        basis_exps = [basis_exps[k] for k in order]
        self._pos = {}
        for new, k in enumerate(order):
            i, a = divmod(k, nb)
            self._pos[(a, i)] = new
        table = {}
        base_elems = base.basis_elems()
        for (a, i), p in self._pos.items():
            for (b, j), q in self._pos.items():
                if q < p:
                    if (q, p) in table:
                        table[(p, q)] = table[(q, p)]
                    continue
                powers = [base.zero()] * (i + j + 1)
                powers[i + j] = base_elems[a] * base_elems[b]
                vec = self._vector(self._reduce(powers))
                entries = [(k, c) for k, c in enumerate(vec) if c]
                if entries:
                    table[(p, q)] = entries
        top = [Fraction(0)] * len(basis_exps)
        for (a, i), p in self._pos.items():
            if i == r - 1:
                top[p] = base.top[a]
        gen_images = []
        for g in base.gens():
            gen_images.append(self._vector([g]))
        gen_images.append(self._vector([base.zero(), base.one()] if r > 1 else self._reduce([base.zero(), base.one()])))
        self.alg = GradedAlgebra(name, base.gen_names + (h_name,), basis_exps, table, top, gen_images)
        self.h = self.alg.gen(len(base.gen_names))
        self.psi = base.hom(self.alg, self.alg.gens()[: len(base.gen_names)])

    def __repr__(self):
        return f"<TowerRing {self.name} rank={self.r} betti={self.alg.betti}>"

    def _reduce(self, powers: list[Elem]) -> list[Elem]:
        powers = list(powers)
        r = self.r
        for n in range(len(powers) - 1, r - 1, -1):
            top = powers[n]
            if top.is_zero():
                continue
            powers[n] = self.base.zero()
            for k in range(1, r + 1):
                powers[n - k] = powers[n - k] - top * self.chern[k]
        return powers[:r] + [self.base.zero()] * max(0, r - len(powers))

    def _vector(self, powers: Sequence[Elem]) -> list[Fraction]:
        vec = [Fraction(0)] * (self.r * self.base.rank)
        for i, b in enumerate(powers):
            if i >= self.r:
                if not b.is_zero():
                    raise ValueError("unreduced h power")
                continue
            for a, c in enumerate(b.coeffs):
                if c:
                    vec[self._pos[(a, i)]] = c
        return vec

    def powers(self, x: Elem) -> list[Elem]:
        """Coefficients ``beta_i`` with ``x = sum psi^*(beta_i) h^i``, ``i < r``."""
        out = [[Fraction(0)] * self.base.rank for _ in range(self.r)]
        for (a, i), p in self._pos.items():
            out[i][a] = x.coeffs[p]
        return [self.base.from_vector(v) for v in out]

    def from_powers(self, powers: Sequence[Elem]) -> Elem:
        return self.alg.from_vector(self._vector(self._reduce(list(powers))))

    def push(self, x: Elem) -> Elem:
        """``psi_*``: the coefficient of ``h^(r-1)`` in normal form."""
        return self.powers(x)[self.r - 1]

    def integrate(self, x: Elem) -> Fraction:
        return self.base.integrate(self.push(x))

    def euler(self, sign: int = 1, twist: Elem | None = None) -> Elem:
        """``prod_i (sign*h + delta_i)`` pulled back, optionally with extra twist."""
        out = self.alg.one()
        for d in self.degrees:
            term = self.h * sign + self.psi(d)
            if twist is not None:
                term = term + twist
            out = out * term
        return out


def build_tower(base: GradedAlgebra, degrees: Sequence[Elem], name: str = "P", h_name: str = "h") -> TowerRing:
    return TowerRing(base, degrees, name, h_name)


def segre_pushforward(tower: TowerRing, x: Elem) -> Elem:
    return tower.push(x)


def compare_with_toric(tower: TowerRing, toric_alg: GradedAlgebra, gen_images: Sequence[Elem]) -> dict:
    """Check that generator matching gives a graded isomorphism respecting integration.

    Returns a report with ``ok`` and, on failure, a ``reason`` and possibly a
    counterexample pair of basis indices.
    """
    src = tower.alg
    report: dict = {"tower_betti": list(src.betti), "toric_betti": list(toric_alg.betti)}
    if src.rank != toric_alg.rank or src.betti != toric_alg.betti:
        report.update(ok=False, reason="dimension mismatch")
        return report
    f = src.hom(toric_alg, gen_images)
    bs = src.basis_elems()
    for i, x in enumerate(bs):
        for j, y in enumerate(bs):
            if f(x * y) != f(x) * f(y):
                report.update(ok=False, reason="not multiplicative", counterexample=[i, j])
                return report
    for i, x in enumerate(bs):
        if f(x).degrees_present() not in ([], [src.degrees[i]]):
            report.update(ok=False, reason="not degree preserving", counterexample=[i, i])
            return report
    if linalg.rank(f.matrix()) != src.rank:
        report.update(ok=False, reason="not bijective")
        return report
    for i, x in enumerate(bs):
        for j, y in enumerate(bs):
            if tower.integrate(x * y) != toric_alg.integrate(f(x) * f(y)):
                report.update(ok=False, reason="integration mismatch", counterexample=[i, j])
                return report
    report.update(ok=True, pairing_rank=src.rank)
    return report


def bundle_generator_images(toric_ring, base_labels: Sequence[str], zeta: Elem) -> list[Elem]:
    """Images for a tower over a toric base: base rays go to their lifts, ``h`` to ``zeta``."""
    return [toric_ring.x(lbl) for lbl in base_labels] + [zeta]


def zeta_class(toric_ring, fiber_label0: str, degree0: Mapping[str, int]) -> Elem:
    """``c_1(O(1)) = x_{f_0} - D_0`` on a toric projective bundle."""
    out = toric_ring.x(fiber_label0)
    for k, c in degree0.items():
        if c:
            out = out - toric_ring.x(k) * Fraction(c)
    return out
