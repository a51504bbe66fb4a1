from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flipspec import decomposition as dec
from flipspec import toric
from flipspec.equivariant import (
    EquivariantTriple,
    LZPoly,
    NegativeSupportError,
    NovikovSeries,
    RationalForm,
    TruncationOverflow,
    divisor_class_minus,
    divisor_class_plus,
    equivariant_euler,
    laurent_inverse_linear,
    leading_term,
    shift_S,
)
from flipspec.geometry import MINUS, PLUS, ZERO


def test_euler_over_point():
    alg = toric.cohomology_ring(toric.point()).alg
    lam = LZPoly.lam(alg)
    assert equivariant_euler(alg, [alg.zero(), alg.zero()], 1, 0) == lam * lam
    assert equivariant_euler(alg, [], 1, 3) == LZPoly.scalar(alg, 1)


def test_euler_line_bundle_on_p1():
    alg = R = toric.cohomology_ring(toric.projective_space(1))
    alg, H = R.alg, R.x("x0")
    e = equivariant_euler(alg, [H], 1, 1)
    assert e == LZPoly.lam(alg) + LZPoly.z(alg) + LZPoly.const(H)


def test_lz_shift_is_substitution():
    alg = toric.cohomology_ring(toric.point()).alg
    lam, z = LZPoly.lam(alg), LZPoly.z(alg)
    p = lam * lam + lam * 3
    assert p.shift(2) == (lam - z * 2) * (lam - z * 2) + (lam - z * 2) * 3
    assert p.shift(2).shift(-2) == p


def test_laurent_inverse_linear():
    alg = R = toric.cohomology_ring(toric.projective_space(1))
    alg, H = R.alg, R.x("x0")
    inv = laurent_inverse_linear(alg, Fraction(1), H)
    assert inv == {-1: alg.one(), -2: -H}
    with pytest.raises(ArithmeticError):
        laurent_inverse_linear(alg, Fraction(0), H)


def test_rational_form_cancels(lmp1):
    comp = lmp1.components[ZERO]
    (c, *_) = comp.weights()
    x = LZPoly.lam(comp.alg) + LZPoly.scalar(comp.alg, 2)
    f = RationalForm(comp, x * comp.alg.one() * RationalForm.zero(comp).factor(c, 1), {(c, 1): 1})
    n = f.normalized()
    assert n.is_polynomial()
    assert n.num == x


def test_rational_form_sum_over_common_denominator(dp1):
    comp = dp1.components[PLUS]
    one = RationalForm.const(comp, comp.alg.one())
    inv = one.times_euler(-1, 1, -1)
    assert not inv.is_polynomial()
    assert (inv.times_euler(-1, 1, 1)).equals(one)
    assert (inv + inv - inv * 2).is_zero()


# shift operators on the blowup of P2 at a point

def _unit(g, order=3):
    return NovikovSeries.constant(EquivariantTriple.one(g), order)


def test_shift_of_one_on_minus(dp1):
    x = shift_S(dp1, _unit(dp1), 1)
    t = x.terms[(0, 0, 0)]
    assert t.equals(divisor_class_minus(dp1))


def test_shift_of_one_on_plus(dp1):
    x = shift_S(dp1, _unit(dp1), 1)
    s = x.scale
    t = x.terms[(s, s, 0)]
    comp = dp1.components[PLUS]
    expected = RationalForm.const(comp, comp.alg.one()).times_euler(-1, 1, -1)
    assert t[PLUS].equals(expected)
    assert t[MINUS].is_zero() and t[ZERO].is_zero()


def test_f0_factor_carries_q_a(dp1):
    x = shift_S(dp1, _unit(dp1), 1)
    s = x.scale
    assert not x.terms[(s, 0, 0)][ZERO].is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from(["dp1", "lm23", "lmp1"]))
def test_shift_group_law(request_geoms, k1, k2, name):
    g = request_geoms[name]
    for r in dec.reference_basis(g)[:3]:
        x = NovikovSeries.constant(r.triple, order=8)
        lhs = shift_S(g, shift_S(g, x, k1), k2)
        rhs = shift_S(g, x, k1 + k2)
        assert lhs.equals(rhs)


@pytest.fixture(scope="module")
def request_geoms(dp1, lm23, lmp1):
    return {"dp1": dp1, "lm23": lm23, "lmp1": lmp1}


def test_truncation_overflow(dp1):
    with pytest.raises(TruncationOverflow):
        shift_S(dp1, _unit(dp1, order=3), 4)


# leading terms

def test_leading_term_of_one(dp1):
    assert leading_term(_unit(dp1)).equals(EquivariantTriple.one(dp1))


def test_leading_term_of_shift_is_minus_part(dp1):
    assert leading_term(shift_S(dp1, _unit(dp1), 1)).equals(divisor_class_minus(dp1))


def test_leading_term_of_twisted_inverse_shift(dp1):
    x = NovikovSeries.constant(divisor_class_plus(dp1))
    s = x.scale
    y = shift_S(dp1, x, -1).times_monomial((s, s, 0))
    lt = leading_term(y)
    comp = dp1.components[PLUS]
    lam, z, Lp = LZPoly.lam(comp.alg), LZPoly.z(comp.alg), LZPoly.const(dp1.Lp)
    expected = RationalForm.poly(comp, (-lam - z + Lp) * (-lam + Lp))
    assert lt[PLUS].equals(expected)
    assert lt[MINUS].is_zero() and lt[ZERO].is_zero()


def test_negative_support_detected(dp1):
    with pytest.raises(NegativeSupportError):
        leading_term(shift_S(dp1, _unit(dp1), -1))
