"""Euler-field spectrum: the predicted eigenvalues and a Batyrev quantum-ring oracle.

The oracle presents small quantum cohomology of a smooth Fano toric variety by
quantum Stanley-Reisner relations, reduces with a Groebner basis over
``QQ(t)`` and reads off the multiplication matrix of ``c_1``.  Eigenvalues
come from the exact characteristic polynomial: it is factored over ``QQ[t]``
first, so repeated eigenvalues keep their multiplicity without numerical
splitting of Jordan blocks.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
import sympy as sp
from scipy.optimize import linear_sum_assignment
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import Elem
from .geometry import ThreeComponentGeometry
from .toric import Fan, ToricRing, cohomology_ring

T = sp.Symbol("t")
LAM = sp.Symbol("lam")
KT = QQ.frac_field(T)


class OracleError(ValueError):
    pass


def euler_field_at_origin(ring: ToricRing) -> Elem:
    """At the origin of the deformation space the Euler field is ``c_1``."""
    return ring.c1()


# prediction

@dataclass
class PredictedSpectrum:
    values: list[complex]
    r_plus: int
    r_minus: int
    dim_plus: int
    dim_f0: int

    def to_json(self) -> dict:
        return {
            "r_plus": self.r_plus,
            "r_minus": self.r_minus,
            "dim_H(X+)": self.dim_plus,
            "dim_H(F0)": self.dim_f0,
            "eigenvalues": [_cjson(z) for z in sort_multiset(self.values)],
        }


def predicted_spectrum(g: ThreeComponentGeometry, t: complex) -> PredictedSpectrum:
    """Zero with multiplicity ``dim H(X+)`` and ``(r_- - r_+) q^2 e^{pi i (r_+ - 2j)/(r_- - r_+)}``.

    ``t = Q^a`` and ``q^2 = t^{1/|c|}`` (principal branch; the multiset does not
    depend on the branch).
    """
    g.require_nonflop()
    rp, rm = g.r_plus, g.r_minus
    n = rm - rp
    q2 = complex(t) ** (1.0 / n) if t != 0 else 0j
    vals = [0j] * g.Xp.alg.rank
    for j in range(n):
        z = n * q2 * cmath.exp(1j * cmath.pi * (rp - 2 * j) / n)
        vals += [z] * g.F0.alg.rank
    return PredictedSpectrum(vals, rp, rm, g.Xp.alg.rank, g.F0.alg.rank)


# oracle

@dataclass
class QuantumRelation:
    collection: tuple[str, ...]
    cone: tuple[str, ...]
    coefficients: tuple[int, ...]
    beta: tuple[Fraction, ...]  # free-divisor coordinates
    weight: object  # sympy expression in t

    def to_json(self) -> dict:
        return {
            "collection": list(self.collection),
            "cone": list(self.cone),
            "coefficients": list(self.coefficients),
            "beta": [str(x) for x in self.beta],
            "q^beta": str(self.weight),
        }


@dataclass
class BatyrevQuantumRing:
    ring: ToricRing
    relations: list[QuantumRelation]
    standard_monomials: list[tuple[int, ...]]
    c1_matrix: list[list]  # sympy expressions in t
    gens: tuple
    groebner: object = field(repr=False, default=None)

    @property
    def rank(self) -> int:
        return len(self.standard_monomials)

    def multiplication_matrix(self, poly) -> list[list]:
        return _mult_matrix(self.groebner, self.gens, self.standard_monomials, poly)

    def charpoly(self):
        M = DomainMatrix([[KT.from_sympy(x) for x in row] for row in self.c1_matrix], (self.rank, self.rank), KT)
        coeffs = M.charpoly()
        return sp.Poly([KT.to_sympy(c) for c in coeffs], LAM)

    def eigenvalues(self, t: complex) -> list[complex]:
        cp = self.charpoly().as_expr()
        num, _ = sp.fraction(sp.together(cp))
        out: list[complex] = []
        _, factors = sp.factor_list(num, LAM, T)
        for f, mult in factors:
            poly = sp.Poly(f, LAM)
            if poly.degree() <= 0:
                continue
            coeffs = [complex(sp.sympify(c).subs(T, t)) for c in poly.all_coeffs()]
            roots = np.roots(coeffs) if len(coeffs) > 1 else []
            for r in roots:
                out += [complex(r)] * mult
        if len(out) != self.rank:
            raise OracleError("characteristic polynomial degenerates at this value of t")
        return out

    def eigenvalues_dense(self, t: complex) -> list[complex]:
        """Plain numerical eigensolve; loses accuracy on repeated eigenvalues."""
        M = np.array([[complex(sp.sympify(x).subs(T, t)) for x in row] for row in self.c1_matrix])
        return [complex(z) for z in np.linalg.eigvals(M)]

    def commuting_check(self, t: complex, tol: float = 1e-9) -> bool:
        mats = []
        for i in range(len(self.gens)):
            m = self.multiplication_matrix(self.gens[i])
            mats.append(np.array([[complex(sp.sympify(x).subs(T, t)) for x in row] for row in m]))
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                d = mats[i] @ mats[j] - mats[j] @ mats[i]
                if np.abs(d).max(initial=0.0) > tol * (1 + np.abs(mats[i]).max() * np.abs(mats[j]).max()):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "fan": self.ring.fan.to_json(),
            "relations": [r.to_json() for r in self.relations],
            "standard_monomials": [list(m) for m in self.standard_monomials],
            "c1_matrix": [[str(x) for x in row] for row in self.c1_matrix],
        }


def curve_multiple(beta: Sequence[Fraction], ell: Sequence[Fraction]) -> Fraction | None:
    """``k`` with ``beta = k * ell``, or ``None``."""
    k = None
    for b, e in zip(beta, ell):
        if e == 0:
            if b != 0:
                return None
            continue
        r = Fraction(b) / Fraction(e)
        if k is None:
            k = r
        elif k != r:
            return None
    return k if k is not None else Fraction(0)


def line_assignment(ell: Sequence[Fraction]) -> Callable[[Sequence[Fraction]], object]:
    """``Q^beta = t^k`` when ``beta = k ell`` with ``k`` a nonnegative integer, otherwise ``0``."""

    def q(beta):
        k = curve_multiple(beta, ell)
        if k is None or k < 0 or k.denominator != 1:
            return sp.Integer(0)
        return T ** int(k)

    return q


def _mult_matrix(G, gens, std, poly) -> list[list]:
    idx = {m: i for i, m in enumerate(std)}
    n = len(std)
    cols = []
    for m in std:
        mono = sp.Mul(*[x ** e for x, e in zip(gens, m)])
        _, r = G.reduce(sp.expand(poly * mono))
        col = [sp.Integer(0)] * n
        for term, coeff in sp.Poly(r, *gens, domain=KT).terms():
            if term not in idx:
                raise OracleError("remainder outside the standard monomials")
            col[idx[term]] = KT.to_sympy(coeff)
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _standard_monomials(G, nvars: int) -> list[tuple[int, ...]]:
    leads = [sp.Poly(p, *G.gens, domain=KT).monoms(order=G.order)[0] for p in G.exprs]

    def divisible(m):
        return any(all(a >= b for a, b in zip(m, l)) for l in leads)

    out, frontier = [], [tuple([0] * nvars)]
    seen = set(frontier)
    while frontier:
        m = frontier.pop()
        if divisible(m):
            continue
        out.append(m)
        for i in range(nvars):
            nm = tuple(e + (k == i) for k, e in enumerate(m))
            if nm not in seen:
                seen.add(nm)
                frontier.append(nm)
        if len(out) > 10000:
            raise OracleError("quotient is not finite dimensional")
    return sorted(out, key=lambda m: (sum(m), tuple(-e for e in m)))


def batyrev_quantum_ring(fan: Fan, novikov: Callable[[Sequence[Fraction]], object],
                         name: str = "Xq") -> BatyrevQuantumRing:
    ring = cohomology_ring(fan, name)
    if not ring.is_fano():
        raise OracleError("fan is not Fano: the quantum Stanley-Reisner presentation is not guaranteed")
    xs = sp.symbols(" ".join(f"x_{i}" for i in range(len(fan.rays))))
    xs = tuple(xs) if isinstance(xs, (tuple, list)) else (xs,)
    rels = []
    records = []
    for P in fan.minimal_nonfaces:
        v = [sum(fan.rays[i][k] for i in P) for k in range(fan.n)]
        cone, coeffs = fan.max_cone_containing(v)
        support = [(j, c) for j, c in zip(cone, coeffs) if c != 0]
        for _, c in support:
            if Fraction(c).denominator != 1:
                raise OracleError("ray sum is not an integral combination")
        vec = [Fraction(0)] * len(fan.rays)
        for i in P:
            vec[i] += 1
        for j, c in support:
            vec[j] -= Fraction(c)
        beta = ring.curve_from_intersections(vec)
        w = sp.sympify(novikov(beta))
        lhs = sp.Mul(*[xs[i] for i in P])
        rhs = sp.Mul(*[xs[j] ** int(c) for j, c in support])
        rels.append(lhs - w * rhs)
        records.append(QuantumRelation(tuple(fan.labels[i] for i in P), tuple(fan.labels[j] for j, _ in support),
                                       tuple(int(c) for _, c in support), tuple(beta), w))
    for k in range(fan.n):
        rels.append(sum(fan.rays[i][k] * xs[i] for i in range(len(fan.rays))))
    G = sp.groebner(rels, *xs, order="grevlex", domain=KT)
    std = _standard_monomials(G, len(xs))
    c1 = sum(xs)
    M = _mult_matrix(G, xs, std, c1)
    return BatyrevQuantumRing(ring, records, std, M, xs, G)


def oracle_for_geometry(g: ThreeComponentGeometry) -> BatyrevQuantumRing:
    """Quantum ring of ``X_-`` with ``Q^ell = t`` for the fiber line ``ell`` of ``P_- -> F_0``."""
    ell = g.lattice.fiber_minus
    return batyrev_quantum_ring(g.Xm.fan, line_assignment(ell), "X-q")


def projective_space_oracle(n: int) -> BatyrevQuantumRing:
    from .toric import projective_space

    fan = projective_space(n)
    ring = cohomology_ring(fan, f"P{n}")
    ell = ring.mori_generators[0]
    return batyrev_quantum_ring(fan, line_assignment(ell), f"P{n}q")


# comparison

def sort_multiset(values: Sequence[complex]) -> list[complex]:
    return sorted((complex(v) for v in values), key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def _cjson(z: complex) -> list[float]:
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


def spectrum_compare(predicted: Sequence[complex], oracle: Sequence[complex], tol: float = 1e-9) -> dict:
    p = [complex(z) for z in predicted]
    o = [complex(z) for z in oracle]
    if len(p) != len(o):
        raise ValueError(f"multiplicity mismatch: {len(p)} predicted, {len(o)} oracle")
    if not p:
        return {"pass": True, "max_distance": 0.0, "threshold": tol, "pairs": []}
    cost = np.abs(np.subtract.outer(np.array(p), np.array(o)))
    rows, cols = linear_sum_assignment(cost)
    dist = float(cost[rows, cols].max())
    scale = max(max(abs(z) for z in p), max(abs(z) for z in o))
    thr = tol * (1 + scale)
    pairs = sorted(((p[i], o[j]) for i, j in zip(rows, cols)), key=lambda ab: (round(ab[0].real, 12), round(ab[0].imag, 12)))
    return {
        "pass": dist <= thr,
        "max_distance": dist,
        "threshold": thr,
        "pairs": [[_cjson(a), _cjson(b)] for a, b in pairs],
    }


def spectrum_csv_rows(predicted: Sequence[complex], oracle: Sequence[complex]) -> list[tuple]:
    """Rows ``(re, im, multiplicity, source)`` grouped by value at 12 digits."""
    rows = []
    for source, vals in (("predicted", predicted), ("oracle", oracle)):
        counts: dict[tuple[float, float], int] = {}
        for z in vals:
            key = tuple(_cjson(complex(z)))
            counts[key] = counts.get(key, 0) + 1
        for (re, im), m in sorted(counts.items()):
            rows.append((re, im, m, source))
    return rows
