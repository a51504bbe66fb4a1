"""Equivariant classes recorded by their restrictions to the three fixed components.

A restriction is ``P(lambda, z) / prod e_{c lambda + m z}(N_{F,c})^{n}`` where the
numerator has coefficients in ``H*(F)`` and ``z`` may appear with negative
powers.  Novikov series index such triples by exponents in the lattice spanned
by ``a``, ``b`` and ``lambda*``, scaled by ``2|c_F0|`` so that every fractional
power used downstream stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .algebra import Elem, GradedAlgebra
from .geometry import COMPONENTS, MINUS, PLUS, ZERO, FixedComponent, ThreeComponentGeometry

Key = tuple[int, int]  # (power of lambda, power of z)


class NonRegularError(ArithmeticError):
    """A denominator has vanishing scalar part at the evaluation point."""


class TruncationOverflow(ArithmeticError):
    pass


class NegativeSupportError(ArithmeticError):
    pass


# polynomials in lambda and z over H*(F)

class LZPoly:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: GradedAlgebra, terms: Mapping[Key, Elem] | None = None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def const(cls, x: Elem) -> "LZPoly":
        return cls(x.ring, {(0, 0): x})

    @classmethod
    def scalar(cls, alg: GradedAlgebra, c) -> "LZPoly":
        return cls(alg, {(0, 0): alg.one() * Fraction(c)})

    @classmethod
    def lam(cls, alg: GradedAlgebra, power: int = 1) -> "LZPoly":
        return cls(alg, {(power, 0): alg.one()})

    @classmethod
    def z(cls, alg: GradedAlgebra, power: int = 1) -> "LZPoly":
        return cls(alg, {(0, power): alg.one()})

    def __add__(self, other: "LZPoly") -> "LZPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LZPoly(self.alg, out)

    def __neg__(self):
        return LZPoly(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "LZPoly":
        if isinstance(other, (int, Fraction)):
            return LZPoly(self.alg, {k: v * Fraction(other) for k, v in self.terms.items()})
        if isinstance(other, Elem):
            return LZPoly(self.alg, {k: v * other for k, v in self.terms.items()})
        out: dict[Key, Elem] = {}
        for (l1, z1), a in self.terms.items():
            for (l2, z2), b in other.terms.items():
                k = (l1 + l2, z1 + z2)
                p = a * b
                out[k] = out[k] + p if k in out else p
        return LZPoly(self.alg, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LZPoly":
        out = LZPoly.scalar(self.alg, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LZPoly):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def lambda_degree(self) -> int:
        return max((l for l, _ in self.terms), default=-1)

    def lambda_coefficient(self, n: int) -> dict[int, Elem]:
        """Coefficient of ``lambda^n`` as a Laurent polynomial in ``z``."""
        return {zp: v for (l, zp), v in self.terms.items() if l == n}

    def shift(self, k: int) -> "LZPoly":
        """Substitute ``lambda -> lambda - k z``."""
        if k == 0:
            return self
        out = LZPoly(self.alg)
        for (l, zp), v in self.terms.items():
            part = {}
            for i in range(l + 1):
                part[(l - i, zp + i)] = v * Fraction(comb(l, i) * (-k) ** i)
            out = out + LZPoly(self.alg, part)
        return out

    def evaluate(self, u: Elem) -> dict[int, Elem]:
        """Set ``lambda = u`` (a class in ``H*(F)``); returns a Laurent polynomial in z."""
        out: dict[int, Elem] = {}
        powers = {0: self.alg.one()}
        for (l, zp), v in sorted(self.terms.items()):
            if l not in powers:
                powers[l] = u ** l
            t = v * powers[l]
            out[zp] = out[zp] + t if zp in out else t
        return {k: v for k, v in out.items() if not v.is_zero()}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*lam^{l}*z^{zp}" for (l, zp), v in sorted(self.terms.items()))


def laurent_mul(a: dict[int, Elem], b: dict[int, Elem]) -> dict[int, Elem]:
    out: dict[int, Elem] = {}
    for i, x in a.items():
        for j, y in b.items():
            p = x * y
            out[i + j] = out[i + j] + p if i + j in out else p
    return {k: v for k, v in out.items() if not v.is_zero()}


def laurent_inverse_linear(alg: GradedAlgebra, scalar: Fraction, nil: Elem) -> dict[int, Elem]:
    """Inverse of ``scalar*z + nil`` with ``nil`` nilpotent."""
    if scalar == 0:
        raise NonRegularError("denominator factor has no invertible part")
    out: dict[int, Elem] = {}
    term = alg.one()
    k = 0
    while not term.is_zero():
        out[-(k + 1)] = term * (Fraction(-1) ** k / scalar ** (k + 1))
        term = term * nil
        k += 1
    return out


# Euler classes

def equivariant_euler(alg: GradedAlgebra, summands: Iterable[Elem], sign: int, m: int) -> LZPoly:
    """``prod_i (sign*lambda + m z + delta_i)``."""
    out = LZPoly.scalar(alg, 1)
    for d in summands:
        out = out * (LZPoly.lam(alg) * sign + LZPoly.z(alg) * m + LZPoly.const(d))
    return out


# rational restriction on one component

@dataclass
class RationalForm:
    """``num / prod_{(c, m)} e_{c lambda + m z}(N_{F,c})^{den[(c, m)]}``."""

    comp: FixedComponent
    num: LZPoly
    den: dict[tuple[int, int], int]

    @classmethod
    def poly(cls, comp: FixedComponent, p: LZPoly) -> "RationalForm":
        return cls(comp, p, {})

    @classmethod
    def zero(cls, comp: FixedComponent) -> "RationalForm":
        return cls(comp, LZPoly(comp.alg), {})

    @classmethod
    def const(cls, comp: FixedComponent, x: Elem) -> "RationalForm":
        return cls(comp, LZPoly.const(x), {})

    def factor(self, c: int, m: int) -> LZPoly:
        return equivariant_euler(self.comp.alg, self.comp.normal.get(c, []), c, m)

    def _expand(self, den: Mapping[tuple[int, int], int]) -> LZPoly:
        """Numerator rewritten over the larger denominator ``den``."""
        out = self.num
        for key, n in den.items():
            extra = n - self.den.get(key, 0)
            if extra < 0:
                raise ValueError("target denominator too small")
            if extra:
                out = out * self.factor(*key) ** extra
        return out

    def __add__(self, other: "RationalForm") -> "RationalForm":
        den = dict(self.den)
        for k, n in other.den.items():
            den[k] = max(den.get(k, 0), n)
        return RationalForm(self.comp, self._expand(den) + other._expand(den), den).normalized()

    def __neg__(self):
        return RationalForm(self.comp, -self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "RationalForm":
        if isinstance(other, (int, Fraction, Elem)):
            return RationalForm(self.comp, self.num * other, dict(self.den))
        den = dict(self.den)
        for k, n in other.den.items():
            den[k] = den.get(k, 0) + n
        return RationalForm(self.comp, self.num * other.num, den).normalized()

    def times_euler(self, c: int, m: int, power: int) -> "RationalForm":
        """Multiply by ``e_{c lambda + m z}(N_{F,c})^power`` (``power`` may be negative)."""
        if not self.comp.normal.get(c):
            return self
        den = dict(self.den)
        n = den.get((c, m), 0) - power
        if n > 0:
            den[(c, m)] = n
            return RationalForm(self.comp, self.num, den)
        den.pop((c, m), None)
        num = self.num * self.factor(c, m) ** (-n) if n < 0 else self.num
        return RationalForm(self.comp, num, den)

    def shift(self, k: int) -> "RationalForm":
        """``lambda -> lambda - k z``; the factor ``(c, m)`` becomes ``(c, m - c k)``."""
        den = {(c, m - c * k): n for (c, m), n in self.den.items()}
        return RationalForm(self.comp, self.num.shift(k), den)

    def normalized(self) -> "RationalForm":
        """Cancel denominator factors that divide the numerator."""
        num, den = self.num, dict(self.den)
        if num.is_zero():
            return RationalForm(self.comp, num, {})
        for key in sorted(den):
            while den.get(key, 0) > 0:
                q = _exact_divide(num, self.factor(*key))
                if q is None:
                    break
                num = q
                den[key] -= 1
                if den[key] == 0:
                    del den[key]
        return RationalForm(self.comp, num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def equals(self, other: "RationalForm") -> bool:
        den = dict(self.den)
        for k, n in other.den.items():
            den[k] = max(den.get(k, 0), n)
        return self._expand(den) == other._expand(den)

    def evaluate(self, u: Elem) -> dict[int, Elem]:
        """Value at ``lambda = u``, with denominators expanded in their nilpotent part."""
        alg = self.comp.alg
        out = self.num.evaluate(u)
        if not out:
            return {}
        for (c, m), n in sorted(self.den.items()):
            inv_one = {0: alg.one()}
            for d in self.comp.normal.get(c, []):
                inv_one = laurent_mul(inv_one, laurent_inverse_linear(alg, Fraction(m), u * c + d))
            for _ in range(n):
                out = laurent_mul(out, inv_one)
        return out

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        dens = "*".join(f"e[{c}lam+{m}z]^{n}" for (c, m), n in sorted(self.den.items()))
        return f"({self.num})/({dens})"


def _exact_divide(p: LZPoly, f: LZPoly) -> LZPoly | None:
    """``p / f`` if exact, where the top lambda coefficient of ``f`` is +-1."""
    df = f.lambda_degree()
    if df <= 0:
        return None
    lead = f.lambda_coefficient(df)
    if set(lead) != {0} or lead[0] not in (f.alg.one(), -f.alg.one()):
        return None
    sgn = Fraction(1) if lead[0] == f.alg.one() else Fraction(-1)
    rem = p
    quot = LZPoly(p.alg)
    while not rem.is_zero() and rem.lambda_degree() >= df:
        dr = rem.lambda_degree()
        top = LZPoly(p.alg, {(dr - df, zp): v * sgn for zp, v in rem.lambda_coefficient(dr).items()})
        quot = quot + top
        rem = rem - top * f
    return quot if rem.is_zero() else None


# triples

class EquivariantTriple:
    def __init__(self, g: ThreeComponentGeometry, parts: Mapping[str, RationalForm]):
        self.g = g
        self.parts = {k: parts[k] for k in COMPONENTS}

    def __getitem__(self, k: str) -> RationalForm:
        return self.parts[k]

    @classmethod
    def zero(cls, g: ThreeComponentGeometry) -> "EquivariantTriple":
        return cls(g, {k: RationalForm.zero(g.components[k]) for k in COMPONENTS})

    @classmethod
    def from_polys(cls, g: ThreeComponentGeometry, polys: Mapping[str, LZPoly]) -> "EquivariantTriple":
        return cls(g, {k: RationalForm.poly(g.components[k], polys[k]) for k in COMPONENTS})

    @classmethod
    def one(cls, g: ThreeComponentGeometry) -> "EquivariantTriple":
        return cls.from_polys(g, {k: LZPoly.scalar(g.components[k].alg, 1) for k in COMPONENTS})

    @classmethod
    def lam(cls, g: ThreeComponentGeometry) -> "EquivariantTriple":
        return cls.from_polys(g, {k: LZPoly.lam(g.components[k].alg) for k in COMPONENTS})

    def __add__(self, other):
        return EquivariantTriple(self.g, {k: self[k] + other[k] for k in COMPONENTS})

    def __neg__(self):
        return EquivariantTriple(self.g, {k: -self[k] for k in COMPONENTS})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EquivariantTriple(self.g, {k: self[k] * other for k in COMPONENTS})
        return EquivariantTriple(self.g, {k: self[k] * other[k] for k in COMPONENTS})

    __rmul__ = __mul__

    def only(self, comp: str) -> "EquivariantTriple":
        return EquivariantTriple(self.g, {k: self[k] if k == comp else RationalForm.zero(self.g.components[k])
                                          for k in COMPONENTS})

    def is_zero(self) -> bool:
        return all(self[k].is_zero() for k in COMPONENTS)

    def equals(self, other: "EquivariantTriple") -> bool:
        return all(self[k].equals(other[k]) for k in COMPONENTS)

    def __repr__(self):
        return "{" + ", ".join(f"{k}: {self[k]!r}" for k in COMPONENTS) + "}"


def divisor_class_minus(g: ThreeComponentGeometry) -> EquivariantTriple:
    """``[X_-]``: restricts to ``e_lambda(L_-)`` on ``X_-`` and vanishes elsewhere."""
    t = EquivariantTriple.zero(g)
    comp = g.components[MINUS]
    t.parts[MINUS] = RationalForm.poly(comp, equivariant_euler(comp.alg, [g.Lm], 1, 0))
    return t


def divisor_class_plus(g: ThreeComponentGeometry) -> EquivariantTriple:
    t = EquivariantTriple.zero(g)
    comp = g.components[PLUS]
    t.parts[PLUS] = RationalForm.poly(comp, equivariant_euler(comp.alg, [g.Lp], -1, 0))
    return t


def pushforward_from(g: ThreeComponentGeometry, comp_name: str, form: RationalForm) -> EquivariantTriple:
    """``i_{F,*}``: multiply by the equivariant Euler class of the normal bundle."""
    t = EquivariantTriple.zero(g)
    f = form
    for c in g.components[comp_name].weights():
        f = f.times_euler(c, 0, 1)
    t.parts[comp_name] = f
    return t


# shift operators

def shift_prefactor(form: RationalForm, k: int) -> RationalForm:
    """``S^k`` at one component, without its Novikov factor."""
    out = form.shift(k)
    for c in form.comp.weights():
        kc = k * c
        if kc > 0:
            for m in range(1 - kc, 1):
                out = out.times_euler(c, m, 1)
        elif kc < 0:
            for m in range(1, -kc + 1):
                out = out.times_euler(c, m, -1)
    return out.normalized()


class NovikovSeries:
    """Finite sum of ``Q^e * triple`` with ``e = (n_a, n_b, n_lambda*) / scale``.

    Truncation: a term is admissible iff ``|n_a + n_b + n_lambda*| <= 2 * order * scale``
    (pairing with the interior point ``omega = a* + b* + lambda**``).
    """

    def __init__(self, g: ThreeComponentGeometry, terms: Mapping[tuple[int, int, int], EquivariantTriple] | None = None,
                 order: int = 3):
        self.g = g
        self.scale = 2 * max(1, abs(g.c))
        self.order = order
        self.terms: dict[tuple[int, int, int], EquivariantTriple] = {}
        for e, t in (terms or {}).items():
            self._add_term(tuple(e), t)

    def _check(self, e) -> None:
        if abs(sum(e)) > 2 * self.order * self.scale:
            raise TruncationOverflow(f"exponent {e} exceeds truncation order {self.order}")

    def _add_term(self, e, t: EquivariantTriple) -> None:
        if t.is_zero():
            return
        self._check(e)
        if e in self.terms:
            s = self.terms[e] + t
            if s.is_zero():
                del self.terms[e]
            else:
                self.terms[e] = s
        else:
            self.terms[e] = t

    @classmethod
    def constant(cls, t: EquivariantTriple, order: int = 3) -> "NovikovSeries":
        return cls(t.g, {(0, 0, 0): t}, order)

    def unit(self, name: str) -> tuple[int, int, int]:
        s = self.scale
        return {"a": (s, 0, 0), "b": (0, s, 0), "lambda*": (0, 0, s), "S_F0": (-s, 0, s)}[name]

    def equals(self, other: "NovikovSeries") -> bool:
        keys = set(self.terms) | set(other.terms)
        for e in keys:
            x = self.terms.get(e, EquivariantTriple.zero(self.g))
            y = other.terms.get(e, EquivariantTriple.zero(self.g))
            if not x.equals(y):
                return False
        return True

    def times_monomial(self, e) -> "NovikovSeries":
        return NovikovSeries(self.g, {tuple(a + b for a, b in zip(k, e)): t for k, t in self.terms.items()}, self.order)

    def qw_part(self, e) -> tuple[Fraction, Fraction]:
        """Exponent of ``Q_W`` after rewriting ``S = Q^a S_F0``."""
        na, nb, nl = e
        return Fraction(na + nl, self.scale), Fraction(nb, self.scale)

    def __repr__(self):
        return "NovikovSeries(" + ", ".join(f"{e}: {t!r}" for e, t in sorted(self.terms.items())) + ")"


def novikov_exponents(g: ThreeComponentGeometry, k: int, scale: int) -> dict[str, tuple[int, int, int]]:
    """Novikov factor of ``S^k`` at each component: ``Q^0``, ``Q^{ka}``, ``Q^{k(a+b)}``."""
    return {MINUS: (0, 0, 0), ZERO: (k * scale, 0, 0), PLUS: (k * scale, k * scale, 0)}


def shift_S(g: ThreeComponentGeometry, x: NovikovSeries, k: int) -> NovikovSeries:
    out = NovikovSeries(g, order=x.order)
    nov = novikov_exponents(g, k, x.scale)
    for e, t in sorted(x.terms.items()):
        for comp in COMPONENTS:
            form = t[comp]
            if form.is_zero():
                continue
            shifted = EquivariantTriple.zero(g)
            shifted.parts[comp] = shift_prefactor(form, k)
            out._add_term(tuple(a + b for a, b in zip(e, nov[comp])), shifted)
    return out


def leading_term(x: NovikovSeries) -> EquivariantTriple:
    """Coefficient of ``Q_W^0`` (with ``S = Q^a S_F0``); requires nonnegative ``Q_W`` support."""
    out = EquivariantTriple.zero(x.g)
    for e, t in sorted(x.terms.items()):
        qa, qb = x.qw_part(e)
        if qa < 0 or qb < 0:
            raise NegativeSupportError(f"term {e} has negative Q_W exponent")
        if qa == 0 and qb == 0:
            if e[2] != 0:
                raise NegativeSupportError("leading term carries a power of S_F0")
            out = out + t
    return out


def novikov_degree(g: ThreeComponentGeometry, e: tuple[int, int, int], scale: int) -> Fraction:
    """``2 (beta, c_1^{C*}(W))`` for the exponent ``e`` in units of ``1/scale``."""
    L = g.lattice
    beta = tuple(Fraction(e[0]) * a + Fraction(e[1]) * b + Fraction(e[2]) * l
                 for a, b, l in zip(L.a, L.b, L.lam_star))
    return L.novikov_degree(tuple(v / scale for v in beta))


def exponent_to_curve(g: ThreeComponentGeometry, e, scale: int) -> tuple[Fraction, ...]:
    L = g.lattice
    return tuple((Fraction(e[0]) * a + Fraction(e[1]) * b + Fraction(e[2]) * l) / scale
                 for a, b, l in zip(L.a, L.b, L.lam_star))
