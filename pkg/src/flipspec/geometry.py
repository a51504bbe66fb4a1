"""Three-component C*-fixed loci for blowup master spaces and flip local models.

The fixed locus of the master space ``W`` is ``X_+ | F_0 | X_-``: the two GIT
quotients appear as fixed divisors with line-bundle normals ``L_+`` (weight -1)
and ``L_-`` (weight +1), and ``F_0`` carries normal summands of weights +-1.
Everything is realized torically so that all maps stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import linprog

from . import cones, linalg, toric
from .algebra import Elem, RingMap
from .toric import Fan, ToricRing
from .tower import TowerRing

PLUS, ZERO, MINUS = "X+", "F0", "X-"
COMPONENTS = (PLUS, ZERO, MINUS)


class GeometryError(ValueError):
    pass


@dataclass
class FixedComponent:
    """A fixed component with its normal bundle split by weight."""

    name: str
    ring: ToricRing
    normal: dict[int, list[Elem]]

    @property
    def alg(self):
        return self.ring.alg

    def rank_of(self, weight: int) -> int:
        return len(self.normal.get(weight, []))

    def rho_of(self, weight: int) -> Elem:
        return sum(self.normal.get(weight, []), self.alg.zero())

    @property
    def c(self) -> int:
        return sum(w * len(v) for w, v in self.normal.items())

    @property
    def r(self) -> int:
        return sum(len(v) for v in self.normal.values())

    @property
    def rho(self) -> Elem:
        return sum((self.rho_of(w) for w in self.normal), self.alg.zero())

    def weights(self) -> list[int]:
        return sorted(w for w, v in self.normal.items() if v)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "betti": list(self.alg.betti),
            "c": self.c,
            "r": self.r,
            "normal": {str(w): [repr(x) for x in v] for w, v in sorted(self.normal.items())},
        }


@dataclass
class ThreeComponentGeometry:
    kind: str
    params: dict
    Xp: ToricRing
    F0: ToricRing
    Xm: ToricRing
    Xt: ToricRing
    Pp: TowerRing
    Pm: TowerRing
    jp: RingMap  # H(X+) -> H(P+)
    jm: RingMap  # H(X-) -> H(P-)
    pi_p: RingMap  # H(X+) -> H(X~)
    pi_m: RingMap  # H(X-) -> H(X~)
    Lp: Elem  # c1(L+) on X+
    Lm: Elem  # c1(L-) on X-
    Np: list[Elem]  # weight +1 summands of N_{F0}
    Nm: list[Elem]  # weight -1 summands of N_{F0}
    exceptional: Elem  # [E] on X~
    notes: list[str] = field(default_factory=list)

    # fixed-component data
    @cached_property
    def components(self) -> dict[str, FixedComponent]:
        return {
            PLUS: FixedComponent(PLUS, self.Xp, {-1: [self.Lp]}),
            ZERO: FixedComponent(ZERO, self.F0, {1: list(self.Np), -1: list(self.Nm)}),
            MINUS: FixedComponent(MINUS, self.Xm, {1: [self.Lm]}),
        }

    @property
    def r_plus(self) -> int:
        return len(self.Np)

    @property
    def r_minus(self) -> int:
        return len(self.Nm)

    @property
    def c(self) -> int:
        return self.r_plus - self.r_minus

    @property
    def is_flop(self) -> bool:
        return self.c == 0

    @property
    def p_plus(self) -> Elem:
        return -self.Lp

    @property
    def p_minus(self) -> Elem:
        return -self.Lm

    def phi2(self, a: Elem) -> Elem:
        """``pi_-,* pi_+^*`` through the common toric blowup."""
        return self.pi_m.pushforward(self.pi_p(a))

    def jm_push(self, x: Elem) -> Elem:
        return self.jm.pushforward(x)

    def jp_push(self, x: Elem) -> Elem:
        return self.jp.pushforward(x)

    @cached_property
    def lattice(self) -> "EquivCurveLattice":
        return EquivCurveLattice(self)

    def require_nonflop(self) -> None:
        if self.c >= 0:
            raise GeometryError("flop: spectrum pipeline not applicable" if self.c == 0 else "need c_F0 < 0")

    def dimension_identity(self) -> bool:
        lhs = self.Xm.alg.rank
        rhs = self.Xp.alg.rank + abs(self.c) * self.F0.alg.rank
        return lhs == rhs

    def graded_dimension_identity(self) -> bool:
        bm, bp, b0 = self.Xm.alg.betti, self.Xp.alg.betti, self.F0.alg.betti
        for k in range(len(bm)):
            rhs = bp[k] if k < len(bp) else 0
            for i in range(abs(self.c)):
                d = k - i - self.r_plus
                if 0 <= d < len(b0):
                    rhs += b0[d]
            if rhs != bm[k]:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "conventions": {
                "projective_bundle": "P(V) = lines, h = c1(O(1)), prod(h + delta_i) = 0",
                "normal_of_P_minus": "psi_-^*(V_+)(-1)",
                "kirwan_minus": "lambda -> -c1(L-)",
                "kirwan_plus": "lambda -> c1(L+)",
            },
            "c_F0": self.c,
            "r_plus": self.r_plus,
            "r_minus": self.r_minus,
            "betti": {"X+": list(self.Xp.alg.betti), "F0": list(self.F0.alg.betti), "X-": list(self.Xm.alg.betti),
                      "X~": list(self.Xt.alg.betti)},
            "fans": {"X+": self.Xp.fan.to_json(), "F0": self.F0.fan.to_json(), "X-": self.Xm.fan.to_json(),
                     "X~": self.Xt.fan.to_json()},
            "components": {k: v.to_json() for k, v in self.components.items()},
            "c1_L+": repr(self.Lp),
            "c1_L-": repr(self.Lm),
            "notes": list(self.notes),
        }


# builders

def build_blowup_geometry(X: Fan, center: Sequence[str | int]) -> ThreeComponentGeometry:
    tau = X.idx(center)
    if len(tau) < 2:
        raise GeometryError("center has codimension 1: the flip degenerates")
    if not X.is_cone(tau):
        raise GeometryError("center is not a torus-invariant stratum")
    tau_labels = [X.labels[i] for i in tau]
    Xt_fan = toric.star_subdivision(X, tau, "e")
    Xp = toric.cohomology_ring(X, "X+")
    Xt = toric.cohomology_ring(Xt_fan, "X-")
    Z = toric.cohomology_ring(toric.quotient_fan(X, tau), "F0")
    to_Z = toric.restriction_to_orbit(Xp, tau, Z.alg, {lbl: Z.x(lbl) for lbl in Z.fan.labels})
    Nm = [to_Z(Xp.x(lbl)) for lbl in tau_labels]
    Np = [Z.alg.zero()]
    Pp = TowerRing(Z.alg, Np, "P+", "hp")
    Pm = TowerRing(Z.alg, Nm, "P-", "hm")
    jp = toric.restriction_to_orbit(Xp, tau, Pp.alg, {lbl: Pp.psi(Z.x(lbl)) for lbl in Z.fan.labels})
    images = {lbl: Pm.psi(Z.x(lbl)) for lbl in Z.fan.labels}
    for lbl, d in zip(tau_labels, Nm):
        images[lbl] = Pm.h + Pm.psi(d)
    jm = toric.restriction_to_orbit(Xt, ["e"], Pm.alg, images)
    if jm(Xt.x("e")) != -Pm.h:
        raise GeometryError("exceptional divisor does not restrict to -h")
    pi_p = toric.pullback(Xt, Xp)
    pi_m = Xt.alg.identity()
    g = ThreeComponentGeometry(
        kind="blowup",
        params={"ambient": X.to_json(), "center": tau_labels},
        Xp=Xp, F0=Z, Xm=Xt, Xt=Xt, Pp=Pp, Pm=Pm, jp=jp, jm=jm, pi_p=pi_p, pi_m=pi_m,
        Lp=Xp.alg.zero(), Lm=-Xt.x("e"), Np=Np, Nm=Nm, exceptional=Xt.x("e"),
    )
    return g


def _lift(fan: Fan, base: Fan, d: Sequence[int]) -> list[int]:
    return list(d) + [0] * (len(fan.rays) - len(base.rays))


def build_local_model_geometry(S: Fan, v_plus: Sequence, v_minus: Sequence) -> ThreeComponentGeometry:
    """Toric local model ``X_pm = P_{P(V_pm)}(psi^* V_mp (-1) + O)`` of a standard flip."""
    rp, rm = len(v_plus), len(v_minus)
    if rp < 1 or rm < 1:
        raise GeometryError("both bundles need positive rank")
    if rp > rm:
        raise GeometryError("need rank V+ <= rank V-")
    dp = [toric._degree_vector(S, d) for d in v_plus]
    dm = [toric._degree_vector(S, d) for d in v_minus]
    ylab = [f"y{i}" for i in range(rp)]
    wlab = [f"w{j}" for j in range(rm)]
    Sr = toric.cohomology_ring(S, "F0")

    def side(d_own, d_other, own_lab, other_lab):
        r_own = len(d_own)
        if r_own >= 2:
            Fo = toric.projective_bundle(S, d_own, own_lab)
            zeta = [-c for c in _lift(Fo, S, d_own[0])]
            zeta[Fo.index(own_lab[0])] += 1
        else:
            Fo = S
            zeta = [-c for c in d_own[0]]
        summands = []
        for d in d_other:
            summands.append([a - b for a, b in zip(_lift(Fo, S, d), zeta)])
        summands.append([0] * len(Fo.rays))
        X = toric.projective_bundle(Fo, summands, list(other_lab) + ["t"])
        return X, zeta, Fo

    Xm_fan, zeta_m, Fm_fan = side(dm, dp, wlab, ylab)
    Xp_fan, zeta_p, Fp_fan = side(dp, dm, ylab, wlab)
    Xm_fan = _align(Xm_fan, Xp_fan)
    Xt_fan = toric.star_subdivision(Xp_fan, wlab, "e")
    check = toric.star_subdivision(Xm_fan, ylab, "e") if rp >= 2 else Xm_fan
    if not _same_fan(Xt_fan, check):
        raise GeometryError("the two sides do not share the common blowup")
    if rp == 1:
        # the exceptional ray is y0 itself; keep the X- labelling
        Xt_fan = Xm_fan
    Xp = toric.cohomology_ring(Xp_fan, "X+")
    Xm = toric.cohomology_ring(Xm_fan, "X-")
    Xt = toric.cohomology_ring(Xt_fan, "X~") if rp >= 2 else Xm
    e_label = "e" if rp >= 2 else "y0"
    Np = [Sr.divisor(d) for d in dp]
    Nm = [Sr.divisor(d) for d in dm]
    Pp = TowerRing(Sr.alg, Np, "P+", "hp")
    Pm = TowerRing(Sr.alg, Nm, "P-", "hm")
    imgs_m = {lbl: Pm.psi(Sr.x(lbl)) for lbl in S.labels}
    for lbl, d in zip(wlab, Nm):
        imgs_m[lbl] = Pm.h + Pm.psi(d)
    jm = toric.restriction_to_orbit(Xm, ylab, Pm.alg, imgs_m)
    imgs_p = {lbl: Pp.psi(Sr.x(lbl)) for lbl in S.labels}
    if rp >= 2:
        for lbl, d in zip(ylab, Np):
            imgs_p[lbl] = Pp.h + Pp.psi(d)
    jp = toric.restriction_to_orbit(Xp, wlab, Pp.alg, imgs_p)
    zm = Xm.divisor({lbl: c for lbl, c in zip(Fm_fan.labels, zeta_m)})
    zp = Xp.divisor({lbl: c for lbl, c in zip(Fp_fan.labels, zeta_p)})
    Lm = zm - Xm.x("t")
    Lp = zp
    pi_p = toric.pullback(Xt, Xp)
    pi_m = toric.pullback(Xt, Xm) if rp >= 2 else Xt.alg.identity()
    return ThreeComponentGeometry(
        kind="local_model",
        params={"base": S.to_json(), "v_plus": [list(d) for d in dp], "v_minus": [list(d) for d in dm]},
        Xp=Xp, F0=Sr, Xm=Xm, Xt=Xt, Pp=Pp, Pm=Pm, jp=jp, jm=jm, pi_p=pi_p, pi_m=pi_m,
        Lp=Lp, Lm=Lm, Np=Np, Nm=Nm, exceptional=Xt.x(e_label),
        notes=["flop: spectrum pipeline not applicable"] if rp == rm else [],
    )


def _align(src: Fan, dst: Fan) -> Fan:
    """Move ``src`` into the lattice coordinates of ``dst`` using shared ray labels."""
    common = [lbl for lbl in src.labels if lbl in dst.labels]
    cone = next(c for c in src.cones if all(src.labels[i] in dst.labels for i in c))
    us = linalg.transpose([src.rays[i] for i in cone])
    ud = linalg.transpose([dst.rays[dst.index(src.labels[i])] for i in cone])
    a = linalg.matmul(ud, linalg.inverse(us))
    if any(x.denominator != 1 for row in a for x in row) or abs(linalg.det(a)) != 1:
        raise GeometryError("lattices of the two quotients cannot be identified")
    moved = toric.transform(src, [[int(x) for x in row] for row in a])
    for lbl in common:
        if moved.rays[moved.index(lbl)] != dst.rays[dst.index(lbl)]:
            raise GeometryError(f"ray {lbl} disagrees between the two quotients")
    return moved


def _same_fan(f1: Fan, f2: Fan) -> bool:
    c1 = {frozenset(f1.rays[i] for i in c) for c in f1.cones}
    c2 = {frozenset(f2.rays[i] for i in c) for c in f2.cones}
    return set(f1.rays) == set(f2.rays) and c1 == c2


# validation

def _projective_witness(ring: ToricRing) -> list[Fraction] | None:
    """A divisor positive on every wall curve, verified exactly, or None."""
    gens = ring.mori_generators
    k = len(ring.free)
    if not gens:
        return []
    A = -np.array([[float(x) for x in g] for g in gens])
    res = linprog(np.zeros(k), A_ub=A, b_ub=-np.ones(len(gens)), bounds=[(None, None)] * k, method="highs")
    if not res.success:
        return None
    y = [Fraction(v).limit_denominator(1000) for v in res.x]
    if all(sum(a * b for a, b in zip(g, y)) > 0 for g in gens):
        return y
    return None


def validate_simple_wall(g: ThreeComponentGeometry) -> dict:
    checks = {}
    bad = [(k, w) for k, comp in g.components.items() for w in comp.weights() if w not in (1, -1)]
    checks["weights_pm1"] = {"ok": not bad, "detail": [f"{k}: weight {w}" for k, w in bad]}
    proj = {k: _projective_witness(r) is not None for k, r in (("X+", g.Xp), ("X-", g.Xm))}
    checks["smooth_projective_quotients"] = {"ok": all(proj.values()), "detail": proj}
    checks["connected_wall"] = {"ok": len(g.F0.fan.cones) >= 1, "detail": "F0 is an irreducible toric variety"}
    checks["dimension_identity"] = {"ok": g.graded_dimension_identity(), "detail": {
        "X-": g.Xm.alg.rank, "X+": g.Xp.alg.rank, "F0": g.F0.alg.rank, "c": g.c}}
    checks["lowest_highest"] = {"ok": g.components[PLUS].rank_of(1) == 0 and g.components[MINUS].rank_of(-1) == 0,
                                "detail": "X+ has no weight +1 normal, X- no weight -1 normal"}
    nr = g.jm(g.Lm) == g.Pm.h and g.jp(g.Lp) == g.Pp.h
    checks["normal_restriction"] = {"ok": nr, "detail": "c1(L_pm) restricts to h_pm on P_pm"}
    total = g.pi_p(g.Lp) + g.pi_m(g.Lm)
    checks["exceptional_compatibility"] = {"ok": _proportional(total, g.exceptional),
                                           "detail": "pi_+^* c1(L+) + pi_-^* c1(L-) is a multiple of E"}
    return {"ok": all(v["ok"] for v in checks.values()), "checks": checks}


def _proportional(x: Elem, e: Elem) -> bool:
    if x.is_zero():
        return True
    ratios = {a / b for a, b in zip(x.coeffs, e.coeffs) if b}
    return len(ratios) == 1 and x == e * ratios.pop()


# equivariant curve lattice

@dataclass(frozen=True)
class LinearTriple:
    """A degree-two equivariant class: ``c_F lambda + delta_F`` on each component."""

    parts: Mapping[str, tuple[Fraction, Elem]]

    def __getitem__(self, k):
        return self.parts[k]


class EquivCurveLattice:
    """``H^2_{C*}(W)`` by explicit GKM-compatible classes, and curves as functionals on it.

    An equivariant curve class is stored as its vector of pairings with the
    chosen basis of ``H^2_{C*}(W)``.
    """

    def __init__(self, g: ThreeComponentGeometry):
        self.g = g
        comps = g.components
        self.comps = comps
        names, triples = [], []

        def zero(k):
            return (Fraction(0), comps[k].alg.zero())

        names.append("lambda")
        triples.append(LinearTriple({k: (Fraction(1), comps[k].alg.zero()) for k in COMPONENTS}))
        names.append("[X-]")
        triples.append(LinearTriple({PLUS: zero(PLUS), ZERO: zero(ZERO), MINUS: (Fraction(1), g.Lm)}))
        for i in g.Xp.alg.indices_of_degree(1):
            alpha = g.Xp.alg.basis(i)
            pw = g.Pp.powers(g.jp(alpha))
            c0 = pw[1].constant() if g.r_plus >= 2 else Fraction(0)
            names.append(f"s[{g.Xp.alg.basis_name(i)}]")
            triples.append(LinearTriple({PLUS: (Fraction(0), alpha), ZERO: (c0, pw[0]), MINUS: (Fraction(0), g.phi2(alpha))}))
        if g.r_plus == 1:
            names.append("s[0,1]")
            triples.append(LinearTriple({PLUS: zero(PLUS), ZERO: (Fraction(1), g.Np[0]),
                                         MINUS: (Fraction(0), g.jm_push(g.Pm.alg.one()))}))
        self.names = names
        self.basis = triples
        self.dim = len(triples)
        self._rows = [self._flatten(t) for t in triples]
        if linalg.rank(self._rows) != self.dim:
            raise GeometryError("equivariant divisor classes are dependent")

    def _flatten(self, t: LinearTriple) -> list[Fraction]:
        out = []
        for k in COMPONENTS:
            c, d = t[k]
            out.append(Fraction(c))
            out.extend(self.comps[k].ring.divisor_coordinates(d))
        return out

    def coordinates(self, t: LinearTriple) -> list[Fraction]:
        x = linalg.solve(linalg.transpose(self._rows), self._flatten(t), self.dim)
        if x is None:
            raise GeometryError("class is not in the span of H^2_{C*}(W)")
        return x

    def contains(self, t: LinearTriple) -> bool:
        return linalg.solve(linalg.transpose(self._rows), self._flatten(t), self.dim) is not None

    def evaluate(self, curve: Sequence[Fraction], t: LinearTriple) -> Fraction:
        return sum((a * b for a, b in zip(self.coordinates(t), curve)), Fraction(0))

    # distinguished curve classes
    def push(self, comp: str, beta: Sequence) -> tuple[Fraction, ...]:
        ring = self.comps[comp].ring
        return tuple(ring.pair(t[comp][1], beta) for t in self.basis)

    def sigma(self, comp: str) -> tuple[Fraction, ...]:
        return tuple(Fraction(t[comp][0]) for t in self.basis)

    @cached_property
    def lam_star(self) -> tuple[Fraction, ...]:
        return self.sigma(MINUS)

    @cached_property
    def a(self) -> tuple[Fraction, ...]:
        return vsub(self.sigma(MINUS), self.sigma(ZERO))

    @cached_property
    def b(self) -> tuple[Fraction, ...]:
        return vsub(self.sigma(ZERO), self.sigma(PLUS))

    @cached_property
    def fiber_minus(self) -> tuple[Fraction, ...]:
        """The fiber line of ``P_- -> F_0`` as a curve on ``X_-`` (free-divisor coordinates)."""
        g = self.g
        return tuple(g.Pm.powers(g.jm(g.Xm.x(i)))[1].constant() for i in g.Xm.free)

    @cached_property
    def fiber_plus(self) -> tuple[Fraction, ...] | None:
        g = self.g
        if g.r_plus < 2:
            return None
        return tuple(g.Pp.powers(g.jp(g.Xp.x(i)))[1].constant() for i in g.Xp.free)

    @cached_property
    def ne_generators(self) -> list[tuple[Fraction, ...]]:
        gens = []
        for comp in COMPONENTS:
            for beta in self.comps[comp].ring.mori_generators:
                gens.append(self.push(comp, beta))
        gens += [self.a, self.b]
        return cones.extremal_generators(gens)

    def dual_cone_generators(self, side: str) -> list[tuple[Fraction, ...]]:
        ls, a, b = self.lam_star, self.a, self.b
        if side in ("-", MINUS):
            extra = [vsub(a, ls), ls]
        elif side in ("+", PLUS):
            extra = [vsub(vadd(a, b), ls), vsub(ls, a)]
        else:
            raise ValueError("side must be + or -")
        return list(self.ne_generators) + extra

    def in_dual_cone(self, curve: Sequence, side: str) -> bool:
        return cones.in_cone(self.dual_cone_generators(side), curve) is not None

    def in_ne(self, curve: Sequence) -> bool:
        return cones.in_cone(self.ne_generators, curve) is not None

    # dual Kirwan maps
    def kappa_dual(self, beta: Sequence, target: str) -> tuple[Fraction, ...]:
        g = self.g
        if target == MINUS:
            return vsub(self.push(MINUS, beta), vscale(self.lam_star, g.Xm.pair(g.Lm, beta)))
        if target == PLUS:
            sp = vsub(vsub(self.lam_star, self.a), self.b)
            return vadd(self.push(PLUS, beta), vscale(sp, g.Xp.pair(g.Lp, beta)))
        if target == ZERO:
            comp = self.comps[ZERO]
            if comp.c == 0:
                raise GeometryError("c_F0 = 0: kappa_F0 is undefined")
            s0 = vsub(self.lam_star, self.a)
            return vsub(self.push(ZERO, beta), vscale(s0, g.F0.pair(comp.rho, beta) / comp.c))
        raise ValueError(target)

    def kappa_dual_b(self) -> tuple[Fraction, ...]:
        """Image of the curve ``b`` of ``X_+`` (defined even when ``r_+ = 1``)."""
        return vsub(self.lam_star, self.a)

    def kappa_dual_via_restriction(self, beta: Sequence, target: str) -> tuple[Fraction, ...]:
        """``beta . kappa(D)`` for every basis class ``D``; an independent check of :meth:`kappa_dual`."""
        g = self.g
        comp = self.comps[target]
        if target == MINUS:
            val = -g.Lm
        elif target == PLUS:
            val = g.Lp
        else:
            val = comp.rho * Fraction(-1, comp.c)
        ring = comp.ring
        return tuple(ring.pair(t[target][1] + val * t[target][0], beta) for t in self.basis)

    def _solve_minus(self, target: Sequence) -> tuple[Fraction, ...]:
        g = self.g
        k = len(g.Xm.free)
        cols = [self.kappa_dual([Fraction(int(i == j)) for j in range(k)], MINUS) for i in range(k)]
        if linalg.rank(cols) != k:
            raise GeometryError("kappa*_{X-} is not injective")
        x = linalg.solve(linalg.transpose(cols), list(target), k)
        if x is None:
            raise GeometryError("inconsistent curve correspondence")
        return tuple(x)

    def phi_curve(self, beta: Sequence | None = None, n_b: int = 0) -> tuple[Fraction, ...]:
        """``phi``: ``N_1(X_+) + Z b -> N_1(X_-)`` with ``kappa*_- phi = kappa*_+``."""
        target = tuple(Fraction(0) for _ in range(self.dim))
        if beta is not None:
            target = self.kappa_dual(beta, PLUS)
        if n_b:
            target = vadd(target, vscale(self.kappa_dual_b(), n_b))
        return self._solve_minus(target)

    def phi0_curve(self, beta: Sequence) -> tuple[Fraction, ...]:
        return self._solve_minus(self.kappa_dual(beta, ZERO))

    # first Chern class and degrees
    @cached_property
    def c1_triple(self) -> LinearTriple:
        g = self.g
        c0 = g.F0.c1() + sum(g.Np, g.F0.alg.zero()) + sum(g.Nm, g.F0.alg.zero())
        return LinearTriple({
            PLUS: (Fraction(-1), g.Xp.c1() + g.Lp),
            ZERO: (Fraction(g.r_plus - g.r_minus), c0),
            MINUS: (Fraction(1), g.Xm.c1() + g.Lm),
        })

    def novikov_degree(self, curve: Sequence) -> Fraction:
        return 2 * self.evaluate(curve, self.c1_triple)

    def novikov_degree_on_minus(self, beta: Sequence) -> Fraction:
        """Degree ``2 (beta, c_1(X_-))`` of a curve on the lowest quotient."""
        return 2 * self.g.Xm.pair(self.g.Xm.c1(), beta)

    def to_json(self) -> dict:
        return {
            "basis": self.names,
            "lambda_star": fr(self.lam_star),
            "a": fr(self.a),
            "b": fr(self.b),
            "ne_generators": [fr(v) for v in self.ne_generators],
        }


def vadd(u, v):
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vsub(u, v):
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vscale(u, s):
    return tuple(Fraction(a) * Fraction(s) for a in u)


def fr(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


def gkm_residuals(g: ThreeComponentGeometry, t: LinearTriple) -> dict[str, bool]:
    """Necessary compatibility of a degree-two triple along the two exceptional loci."""
    c0, d0 = t[ZERO]
    cp, dp = t[PLUS]
    cm, dm = t[MINUS]
    lhs_p = g.jp(dp) + g.Pp.h * (cp - c0)
    ok_p = lhs_p == g.Pp.psi(d0)
    lhs_m = g.jm(dm) - g.Pm.h * (cm - c0)
    ok_m = lhs_m == g.Pm.psi(d0)
    diff = g.pi_m(dm) - g.pi_p(dp) - g.pi_m(g.Lm) * (cm - cp)
    ok_t = _proportional(diff, g.exceptional)
    return {"plus": ok_p, "minus": ok_m, "common_blowup": ok_t}
