"""Discrete Fourier transform to a GIT quotient and the continuous-FT leading constants.

Scalars such as ``c^{-r c / c_F}`` are products of rational prime powers and a
root of unity, so they are kept exactly as :class:`CycloScalar`.  Fractional
powers use the principal branch, ``arg`` in ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from sympy import factorint

from .algebra import Elem
from .equivariant import EquivariantTriple, NovikovSeries, exponent_to_curve, shift_S
from .geometry import MINUS, PLUS, ZERO, FixedComponent, GeometryError, ThreeComponentGeometry


class SupportError(ValueError):
    pass


# exact scalars

@dataclass(frozen=True)
class CycloScalar:
    """``exp(2 pi i * phase) * prod p^e`` with ``phase`` in ``[0, 1)``."""

    phase: Fraction
    primes: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def make(cls, phase, primes: Mapping[int, Fraction] | None = None) -> "CycloScalar":
        ph = Fraction(phase) % 1
        pr = tuple(sorted((int(p), Fraction(e)) for p, e in (primes or {}).items() if e != 0))
        return cls(ph, pr)

    @classmethod
    def rational(cls, q) -> "CycloScalar":
        q = Fraction(q)
        if q == 0:
            raise ZeroDivisionError("zero has no exact polar form")
        primes: dict[int, Fraction] = {}
        for p, e in factorint(abs(q.numerator)).items():
            primes[p] = primes.get(p, Fraction(0)) + e
        for p, e in factorint(q.denominator).items():
            primes[p] = primes.get(p, Fraction(0)) - e
        return cls.make(Fraction(1, 2) if q < 0 else 0, primes)

    @classmethod
    def root_of_unity(cls, r) -> "CycloScalar":
        return cls.make(r)

    @classmethod
    def one(cls) -> "CycloScalar":
        return cls.make(0)

    def __mul__(self, other: "CycloScalar") -> "CycloScalar":
        pr = dict(self.primes)
        for p, e in other.primes:
            pr[p] = pr.get(p, Fraction(0)) + e
        return CycloScalar.make(self.phase + other.phase, pr)

    def inverse(self) -> "CycloScalar":
        return CycloScalar.make(-self.phase, {p: -e for p, e in self.primes})

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, s) -> "CycloScalar":
        """Principal branch power; exact for integer ``s``."""
        s = Fraction(s)
        arg = self.phase if self.phase <= Fraction(1, 2) else self.phase - 1
        if s.denominator == 1:
            arg = self.phase
        return CycloScalar.make(arg * s, {p: e * s for p, e in self.primes})

    def sqrt(self) -> "CycloScalar":
        return self ** Fraction(1, 2)

    def __complex__(self) -> complex:
        mod = 1.0
        for p, e in self.primes:
            mod *= float(p) ** float(e)
        return mod * cmath.exp(2j * cmath.pi * float(self.phase))

    def is_rational(self) -> bool:
        return self.phase in (0, Fraction(1, 2)) and all(e.denominator == 1 for _, e in self.primes)

    def __str__(self) -> str:
        parts = []
        if self.phase:
            parts.append(f"exp(2*pi*i*{self.phase})")
        parts += [f"{p}^({e})" for p, e in self.primes]
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        z = complex(self)
        return {"exact": str(self), "re": round(z.real, 15) + 0.0, "im": round(z.imag, 15) + 0.0}


@dataclass(frozen=True)
class SMonomial:
    """``scalar * S_F^{s_exp}`` with ``S_F`` a formal symbol."""

    scalar: CycloScalar
    s_exp: Fraction

    def __mul__(self, other: "SMonomial") -> "SMonomial":
        return SMonomial(self.scalar * other.scalar, self.s_exp + other.s_exp)

    def __pow__(self, n: int) -> "SMonomial":
        if Fraction(n).denominator != 1:
            raise ValueError("only integer powers of an S-monomial are branch-free")
        return SMonomial(self.scalar ** n, self.s_exp * n)

    def __str__(self):
        return f"{self.scalar}*S^({self.s_exp})"

    def to_json(self) -> dict:
        return {"scalar": self.scalar.to_json(), "S_exponent": str(self.s_exp)}


# continuous FT constants

def _log_key(c: int) -> str:
    return f"log({abs(c)})"


@dataclass
class FourierAsymptotics:
    c: int
    r: int
    rho: Elem
    j: int
    lam: SMonomial
    q: SMonomial
    h: dict[str, Elem]  # "pi*i" and "log(n)" coefficients

    def h_is_zero(self) -> bool:
        return all(v.is_zero() for v in self.h.values())

    def to_json(self) -> dict:
        return {
            "c_F": self.c,
            "r_F": self.r,
            "rho_F": repr(self.rho),
            "j": self.j,
            "lambda_j": self.lam.to_json(),
            "q_Fj": self.q.to_json(),
            "h_Fj": {k: repr(v) for k, v in sorted(self.h.items())},
        }


def continuous_ft_constants(F: FixedComponent, j: int) -> FourierAsymptotics:
    cF = F.c
    if cF == 0:
        raise GeometryError("c_F = 0: no critical points")
    if not 0 <= j < abs(cF):
        raise ValueError("j out of range")
    weights = [(c, F.rank_of(c)) for c in F.weights()]
    scal = CycloScalar.root_of_unity(Fraction(j, cF))
    for c, rc in weights:
        scal = scal * CycloScalar.rational(c) ** Fraction(-rc * c, cF)
    lam = SMonomial(scal, Fraction(1, cF))
    qs = (scal / CycloScalar.rational(cF)).sqrt()
    for c, rc in weights:
        qs = qs * (CycloScalar.rational(c) * scal) ** Fraction(-rc, 2)
    q = SMonomial(qs, Fraction(1, 2 * cF) - Fraction(F.r, 2 * cF))
    h: dict[str, Elem] = {"pi*i": F.rho * Fraction(-2 * j, cF)}
    for c, rc in weights:
        coeff = F.rho * Fraction(rc * c, cF) - F.rho_of(c)
        if c < 0:
            h["pi*i"] = h["pi*i"] + coeff
        if abs(c) != 1:
            key = _log_key(c)
            h[key] = h.get(key, F.alg.zero()) + coeff
    return FourierAsymptotics(cF, F.r, F.rho, j, lam, q, h)


def lambda_identity(F: FixedComponent, j: int) -> bool:
    """``lambda_j^{c_F} * prod_c c^{r_c c} == S_F`` in exact arithmetic."""
    A = continuous_ft_constants(F, j)
    lhs = A.lam ** F.c
    scal = lhs.scalar
    for c in F.weights():
        scal = scal * CycloScalar.rational(c) ** (F.rank_of(c) * c)
    return scal == CycloScalar.one() and lhs.s_exp == 1


@dataclass
class LeadingRecord:
    j: int
    n: int
    q: SMonomial
    h: dict[str, Elem]
    lam_power: SMonomial
    alpha: dict[int, Elem]

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "n": self.n,
            "q_Fj": self.q.to_json(),
            "h_Fj": {k: repr(v) for k, v in sorted(self.h.items())},
            "lambda_j^n": self.lam_power.to_json(),
            "alpha": {str(k): repr(v) for k, v in sorted(self.alpha.items())},
        }


def continuous_ft_leading(F: FixedComponent, triple: EquivariantTriple, j: int) -> LeadingRecord | None:
    """Leading coefficient ``q_{F,j} e^{h/z} lambda_j^n alpha``; ``None`` for a zero restriction."""
    form = triple[F.name]
    if not form.is_polynomial():
        raise GeometryError("leading term needs a polynomial restriction")
    if form.is_zero():
        return None
    A = continuous_ft_constants(F, j)
    n = form.num.lambda_degree()
    return LeadingRecord(j, n, A.q, A.h, A.lam ** n, form.num.lambda_coefficient(n))


def kappa_F(g: ThreeComponentGeometry, triple: EquivariantTriple, comp: str = ZERO) -> Elem:
    F = g.components[comp]
    if F.c == 0:
        raise GeometryError("c_F = 0: kappa_F undefined")
    vals = triple[comp].evaluate(F.rho * Fraction(-1, F.c))
    if any(k != 0 for k in vals):
        raise GeometryError("restriction depends on z")
    return vals.get(0, F.alg.zero())


# discrete FT

@dataclass
class DiscreteFT:
    side: str
    order: int
    scale: int
    terms: dict[tuple[int, int, int], dict[int, Elem]]
    per_k: dict[int, list[tuple[int, int, int]]]

    def qw_part(self, e) -> tuple[Fraction, Fraction]:
        na, nb, nl = e
        return Fraction(na + nl, self.scale), Fraction(nb, self.scale)

    def value_at_qw0(self) -> dict[Fraction, dict[int, Elem]]:
        """Coefficients of ``S_F0^m`` at ``Q_W = 0``."""
        out = {}
        for e, v in sorted(self.terms.items()):
            qa, qb = self.qw_part(e)
            if qa < 0 or qb < 0:
                raise SupportError(f"negative Q_W support at {e}")
            if qa == 0 and qb == 0:
                out[Fraction(e[2], self.scale)] = v
        return out

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "order": self.order,
            "exponent_units": f"1/{self.scale}",
            "terms": [
                {"exponent": list(e), "value": {str(k): repr(x) for k, x in sorted(v.items())}}
                for e, v in sorted(self.terms.items())
            ],
            "per_k": {str(k): [list(e) for e in v] for k, v in sorted(self.per_k.items())},
        }


def discrete_ft(g: ThreeComponentGeometry, x: NovikovSeries, side: str, order: int = 3,
                base: tuple[int, int, int] = (0, 0, 0)) -> DiscreteFT:
    """``sum_k S^{-k} kappa_X(S^k x)`` for ``|k| <= order``, with support checked."""
    comp = MINUS if side in ("-", MINUS) else PLUS
    if comp == MINUS:
        point = g.p_minus
    else:
        point = -g.p_plus
    wide = NovikovSeries(g, x.terms, order=4 * order + 4)
    scale = wide.scale
    terms: dict[tuple[int, int, int], dict[int, Elem]] = {}
    per_k: dict[int, list] = {}
    for k in range(-order, order + 1):
        y = shift_S(g, wide, k)
        per_k[k] = []
        for e, t in sorted(y.terms.items()):
            form = t[comp]
            if form.is_zero():
                continue
            val = form.evaluate(point)
            if not val:
                continue
            ex = (e[0], e[1], e[2] - k * scale)
            per_k[k].append(ex)
            acc = terms.setdefault(ex, {})
            for zp, v in val.items():
                acc[zp] = acc[zp] + v if zp in acc else v
    terms = {e: {k: v for k, v in d.items() if not v.is_zero()} for e, d in terms.items()}
    terms = {e: d for e, d in terms.items() if d}
    L = g.lattice
    cone_side = "-" if comp == MINUS else "+"
    for e in terms:
        rel = tuple(a - b for a, b in zip(e, base))
        if not L.in_dual_cone(exponent_to_curve(g, rel, scale), cone_side):
            raise SupportError(f"exponent {e} outside the dual cone of X{cone_side}")
    return DiscreteFT(comp, order, scale, terms, {k: v for k, v in per_k.items()})
