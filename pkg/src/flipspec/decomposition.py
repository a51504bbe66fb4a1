"""Kirwan maps, the correspondence ``phi2`` and the classical decomposition of ``H*(X_-)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import Elem, RingMap
from .equivariant import (
    EquivariantTriple,
    LZPoly,
    RationalForm,
    divisor_class_minus,
    divisor_class_plus,
    pushforward_from,
)
from .geometry import COMPONENTS, MINUS, PLUS, ZERO, GeometryError, ThreeComponentGeometry


def phi2(g: ThreeComponentGeometry, alpha: Elem) -> Elem:
    return g.phi2(alpha)


def kirwan_point(g: ThreeComponentGeometry, side: str) -> Elem:
    """The class substituted for ``lambda`` by ``kappa_{X_side}``."""
    if side in ("-", MINUS):
        return g.p_minus
    if side in ("+", PLUS):
        return -g.p_plus
    raise ValueError("side must be + or -")


def kirwan_laurent(g: ThreeComponentGeometry, triple: EquivariantTriple, side: str) -> dict[int, Elem]:
    comp = MINUS if side in ("-", MINUS) else PLUS
    return triple[comp].evaluate(kirwan_point(g, side))


def kirwan_map(g: ThreeComponentGeometry, triple: EquivariantTriple, side: str) -> Elem:
    """``kappa_{X_side}``; the restriction must not involve ``z`` after evaluation."""
    vals = kirwan_laurent(g, triple, side)
    comp = MINUS if side in ("-", MINUS) else PLUS
    if any(k != 0 for k in vals):
        raise GeometryError("restriction depends on z; use kirwan_laurent")
    return vals.get(0, g.components[comp].alg.zero())


def kirwan_kernel_check(g: ThreeComponentGeometry, triple: EquivariantTriple, side: str) -> dict:
    comp = MINUS if side in ("-", MINUS) else PLUS
    vals = kirwan_laurent(g, triple, side)
    others = [k for k in COMPONENTS if k != comp and not triple[k].is_zero()]
    return {
        "side": comp,
        "in_kernel": not vals,
        "value": {str(k): repr(v) for k, v in sorted(vals.items())},
        "supported_only_on": comp if not others else None,
    }


# the exceptional-restriction rule

def tower_substitute(g: ThreeComponentGeometry, coeffs: list[Elem], sign: int) -> Elem:
    """``sum_i psi_-^*(beta_i) (sign h_-)^i`` in ``H*(P_-)``."""
    Pm = g.Pm
    out = Pm.alg.zero()
    hp = Pm.alg.one()
    for b in coeffs:
        out = out + Pm.psi(b) * hp
        hp = hp * (Pm.h * sign)
    return out


def exceptional_restriction_check(g: ThreeComponentGeometry) -> dict:
    failures = []
    for i, alpha in enumerate(g.Xp.alg.basis_elems()):
        f = g.Pp.powers(g.jp(alpha))
        if g.jm(g.phi2(alpha)) != tower_substitute(g, f, -1):
            failures.append(g.Xp.alg.basis_name(i))
    return {"ok": not failures, "checked": g.Xp.alg.rank, "failures": failures}


# decomposition

@dataclass
class DecompositionMatrix:
    labels: list[str]
    degrees: list[int]
    expected_degrees: list[int]
    columns: list[list[Fraction]]
    target_basis: list[str]
    det: Fraction
    notes: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> list[list[Fraction]]:
        return linalg.transpose(self.columns) if self.columns else []

    @property
    def invertible(self) -> bool:
        return self.det != 0

    @property
    def grading_ok(self) -> bool:
        return self.degrees == self.expected_degrees

    def inverse(self) -> list[list[Fraction]]:
        return linalg.inverse(self.matrix)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "columns": self.labels,
            "degrees": self.degrees,
            "expected_degrees": self.expected_degrees,
            "target_basis": self.target_basis,
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "det": str(self.det),
            "invertible": self.invertible,
            "grading_ok": self.grading_ok,
        }


def exceptional_class(g: ThreeComponentGeometry, l: int, beta: Elem) -> Elem:
    """``j_-,*(h_-^l psi_-^* beta)``."""
    return g.jm_push(g.Pm.h ** l * g.Pm.psi(beta))


def decomposition_columns(g: ThreeComponentGeometry) -> list[tuple[str, Elem, int]]:
    cols = []
    A = g.Xp.alg
    for i, alpha in enumerate(A.basis_elems()):
        cols.append((f"phi2({A.basis_name(i)})", g.phi2(alpha), A.degrees[i]))
    B = g.F0.alg
    for l in range(abs(g.c)):
        for i, beta in enumerate(B.basis_elems()):
            cols.append((f"j_*(h^{l}*{B.basis_name(i)})", exceptional_class(g, l, beta),
                         B.degrees[i] + l + g.r_plus))
    return cols


def decomposition_map(g: ThreeComponentGeometry) -> DecompositionMatrix:
    cols = decomposition_columns(g)
    M = g.Xm.alg
    notes = []
    if len(cols) != M.rank:
        notes.append("column count differs from dim H*(X-)")
    degrees = []
    for _, x, d in cols:
        present = x.degrees_present()
        degrees.append(present[0] if len(present) == 1 else -1)
    columns = [list(x.coeffs) for _, x, _ in cols]
    det = linalg.det(linalg.transpose(columns)) if len(cols) == M.rank else Fraction(0)
    return DecompositionMatrix(
        labels=[n for n, _, _ in cols],
        degrees=degrees,
        expected_degrees=[d for _, _, d in cols],
        columns=columns,
        target_basis=[M.basis_name(i) for i in range(M.rank)],
        det=det,
        notes=notes,
    )


def pairing_identities_check(g: ThreeComponentGeometry) -> dict:
    """All three pairing identities over full bases, computed inside ``H*(X_-)``."""
    M = g.Xm.alg
    A = g.Xp.alg.basis_elems()
    B = g.F0.alg.basis_elems()
    n = abs(g.c)
    phis = [g.phi2(a) for a in A]
    ex = {(l, i): exceptional_class(g, l, b) for l in range(n) for i, b in enumerate(B)}
    fails: dict[str, list] = {"phi2_isometry": [], "orthogonality": [], "exceptional_block": []}
    counts = {k: 0 for k in fails}
    for i, x in enumerate(phis):
        for j, y in enumerate(phis):
            counts["phi2_isometry"] += 1
            if M.integrate(x * y) != g.Xp.alg.integrate(A[i] * A[j]):
                fails["phi2_isometry"].append([i, j])
    for i, x in enumerate(phis):
        for key, y in ex.items():
            counts["orthogonality"] += 1
            if M.integrate(x * y) != 0:
                fails["orthogonality"].append([i, *key])
    sign = Fraction(-1) ** g.r_plus
    for (l1, i1), x in ex.items():
        for (l2, i2), y in ex.items():
            if l1 + l2 > n - 1:
                continue
            counts["exceptional_block"] += 1
            expected = sign * g.F0.alg.integrate(B[i1] * B[i2]) if l1 + l2 == n - 1 else Fraction(0)
            if M.integrate(x * y) != expected:
                fails["exceptional_block"].append([l1, i1, l2, i2])
    return {
        "ok": not any(fails.values()),
        "checked": counts,
        "failures": fails,
        "sign": str(sign),
    }


# reference basis

def _lz_from_powers(alg, coeffs: list[Elem]) -> LZPoly:
    return LZPoly(alg, {(i, 0): b for i, b in enumerate(coeffs)})


def _euler_poly(alg, summands: list[Elem]) -> LZPoly:
    out = LZPoly.scalar(alg, 1)
    for d in summands:
        out = out * (LZPoly.lam(alg) + LZPoly.const(d))
    return out


@dataclass
class ReferenceClass:
    name: str
    kind: str  # "s_m" or "s_li"
    index: tuple
    triple: EquivariantTriple
    degree: int


def reference_basis(g: ThreeComponentGeometry) -> list[ReferenceClass]:
    """The classes ``s_m`` and ``s_{l,i}``, given by their three restrictions.

    ``s_m`` restricts to ``alpha`` on ``X_+``, to ``phi2(alpha)`` on ``X_-`` and
    to ``f(lambda)`` on ``F_0`` where ``j_+^* alpha = f(h_+)``.  ``s_{l,i}``
    vanishes on ``X_+``, restricts to ``e_lambda(N_+) lambda^l alpha_i`` on
    ``F_0`` and to ``j_-,*((-h_-)^l alpha_i)`` on ``X_-``.
    """
    comps = g.components
    out = []
    A = g.Xp.alg
    for i, alpha in enumerate(A.basis_elems()):
        f = g.Pp.powers(g.jp(alpha))
        t = EquivariantTriple(g, {
            PLUS: RationalForm.const(comps[PLUS], alpha),
            ZERO: RationalForm.poly(comps[ZERO], _lz_from_powers(g.F0.alg, f)),
            MINUS: RationalForm.const(comps[MINUS], g.phi2(alpha)),
        })
        out.append(ReferenceClass(f"s[{A.basis_name(i)}]", "s_m", (i,), t, A.degrees[i]))
    B = g.F0.alg
    e_plus = _euler_poly(B, g.Np)
    for l in range(abs(g.c)):
        for i, beta in enumerate(B.basis_elems()):
            x_minus = g.jm_push((-g.Pm.h) ** l * g.Pm.psi(beta))
            t = EquivariantTriple(g, {
                PLUS: RationalForm.zero(comps[PLUS]),
                ZERO: RationalForm.poly(comps[ZERO], e_plus * LZPoly.lam(B, l) * beta),
                MINUS: RationalForm.const(comps[MINUS], x_minus),
            })
            out.append(ReferenceClass(f"s[{l},{B.basis_name(i)}]", "s_li", (l, i), t,
                                      B.degrees[i] + l + g.r_plus))
    return out


def _restrict_poly(p: LZPoly, f: RingMap, target) -> LZPoly:
    return LZPoly(target, {k: f(v) for k, v in p.terms.items()})


def gkm_check(g: ThreeComponentGeometry, triple: EquivariantTriple) -> dict[str, bool]:
    """Compatibility along ``P_+`` (``lambda = h_+``) and ``P_-`` (``lambda = -h_-``).

    Only meaningful for polynomial, ``z``-free restrictions.
    """
    out = {}
    for comp, tower, jmap, sign in ((PLUS, g.Pp, g.jp, 1), (MINUS, g.Pm, g.jm, -1)):
        side = triple[comp]
        mid = triple[ZERO]
        if not (side.is_polynomial() and mid.is_polynomial()):
            raise GeometryError("compatibility check needs polynomial restrictions")
        u = tower.h * sign
        lhs = _restrict_poly(side.num, jmap, tower.alg).evaluate(u)
        rhs = _restrict_poly(mid.num, tower.psi, tower.alg).evaluate(u)
        out[comp] = lhs == rhs
    return out


def divisor_classes(g: ThreeComponentGeometry) -> dict[str, EquivariantTriple]:
    return {"[X-]": divisor_class_minus(g), "[X+]": divisor_class_plus(g)}


def fixed_pushforward(g: ThreeComponentGeometry, comp: str, beta: Elem) -> EquivariantTriple:
    """``i_{F,*}(beta)`` for ``F = X_+`` or ``X_-``."""
    return pushforward_from(g, comp, RationalForm.const(g.components[comp], beta))


def kernel_report(g: ThreeComponentGeometry) -> dict:
    """Kernel checks for ``[X_pm]`` and the pushforwards ``i_{X_pm,*}`` of basis classes."""
    rows = []
    dc = divisor_classes(g)
    rows.append(("[X-]", "-", dc["[X-]"], True))
    rows.append(("[X+]", "+", dc["[X+]"], True))
    rows.append(("1", "-", EquivariantTriple.one(g), False))
    rows.append(("1", "+", EquivariantTriple.one(g), False))
    for side, comp in (("-", MINUS), ("+", PLUS)):
        alg = g.components[comp].alg
        for i, b in enumerate(alg.basis_elems()):
            rows.append((f"i_{comp},*({alg.basis_name(i)})", side, fixed_pushforward(g, comp, b), True))
    out = []
    for name, side, t, expect in rows:
        rep = kirwan_kernel_check(g, t, side)
        rep.update(name=name, expected=expect, ok=rep["in_kernel"] == expect)
        out.append(rep)
    return {"ok": all(r["ok"] for r in out), "rows": out}
