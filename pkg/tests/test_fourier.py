import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flipspec import decomposition as dec
from flipspec import fourier
from flipspec.equivariant import EquivariantTriple, NovikovSeries
from flipspec.fourier import CycloScalar, SupportError
from flipspec.geometry import ZERO, GeometryError

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=20).filter(lambda q: q != 0)


@given(nonzero, nonzero)
def test_cyclo_rational_is_multiplicative(a, b):
    assert CycloScalar.rational(a) * CycloScalar.rational(b) == CycloScalar.rational(a * b)
    assert complex(CycloScalar.rational(a)) == pytest.approx(float(a))


@given(nonzero, st.integers(-4, 4))
def test_cyclo_integer_power(a, n):
    assert complex(CycloScalar.rational(a) ** n) == pytest.approx(float(a) ** n)


@given(nonzero, st.fractions(0, 1, max_denominator=12))
def test_cyclo_principal_branch(a, phase):
    x = CycloScalar.make(phase) * CycloScalar.rational(a)
    assert complex(x.sqrt()) == pytest.approx(cmath.sqrt(complex(x)), abs=1e-12)
    assert x.sqrt() ** 2 == x
    assert (x * x.inverse()) == CycloScalar.one()


def test_cyclo_is_rational():
    assert CycloScalar.rational(Fraction(-3, 4)).is_rational()
    assert not CycloScalar.rational(2).sqrt().is_rational()
    assert not CycloScalar.root_of_unity(Fraction(1, 4)).is_rational()


# constants on F_0

def test_blowup_plane_constants(dp1):
    A = fourier.continuous_ft_constants(dp1.components[ZERO], 0)
    assert A.lam.s_exp == -1 and A.lam.scalar == CycloScalar.one()
    assert A.q.s_exp == 1
    assert complex(A.q.scalar) == pytest.approx(-1j)
    assert A.h_is_zero()


def test_local_model_23_constants(lm23):
    A = fourier.continuous_ft_constants(lm23.components[ZERO], 0)
    assert A.lam.s_exp == -1 and complex(A.lam.scalar) == pytest.approx(-1)
    assert A.q.s_exp == 2 and complex(A.q.scalar) == pytest.approx(-1)


def test_local_model_p1_h(lmp1):
    F = lmp1.components[ZERO]
    A = fourier.continuous_ft_constants(F, 0)
    assert A.h["pi*i"] == F.rho * 2
    assert set(A.h) == {"pi*i"}


def test_j_out_of_range(dp1):
    with pytest.raises(ValueError):
        fourier.continuous_ft_constants(dp1.components[ZERO], 1)


def test_lambda_identity_numeric(all_geometries):
    for g in all_geometries.values():
        F = g.components[ZERO]
        for j in range(abs(F.c)):
            assert fourier.lambda_identity(F, j)
            A = fourier.continuous_ft_constants(F, j)
            val = complex(A.lam.scalar) ** F.c
            for c in F.weights():
                val *= float(c) ** (F.rank_of(c) * c)
            assert val == pytest.approx(1)
            assert A.lam.s_exp * F.c == 1
            assert A.q.s_exp == Fraction(-(F.r - 1), 2 * F.c)


def test_blowup_p3_roots_differ_by_sign(blp3):
    F = blp3.components[ZERO]
    l0, l1 = (complex(fourier.continuous_ft_constants(F, j).lam.scalar) for j in (0, 1))
    assert l0 == pytest.approx(-l1)
    assert l0 ** -2 == pytest.approx(-1)


# kappa_F and leading records

def test_kappa_f_point(dp1):
    assert fourier.kappa_F(dp1, EquivariantTriple.lam(dp1)).is_zero()
    assert fourier.kappa_F(dp1, EquivariantTriple.one(dp1)) == dp1.F0.alg.one()


def test_kappa_f_on_p1(lmp1):
    F = lmp1.components[ZERO]
    assert fourier.kappa_F(lmp1, EquivariantTriple.lam(lmp1)) == F.rho * Fraction(-1, F.c)


def test_leading_records(dp1):
    F = dp1.components[ZERO]
    rec = fourier.continuous_ft_leading(F, EquivariantTriple.one(dp1), 0)
    assert rec.n == 0 and rec.alpha == {0: F.alg.one()}
    lam = EquivariantTriple.lam(dp1)
    rec = fourier.continuous_ft_leading(F, lam * lam, 0)
    assert rec.n == 2 and rec.lam_power.s_exp == -2
    assert fourier.continuous_ft_leading(F, EquivariantTriple.zero(dp1), 0) is None


# discrete FT

def test_discrete_ft_of_one(lmp1):
    one = NovikovSeries.constant(EquivariantTriple.one(lmp1))
    D = fourier.discrete_ft(lmp1, one, "-", 3)
    assert all(not D.per_k[k] for k in range(1, 4))
    E = fourier.discrete_ft(lmp1, one, "+", 3)
    assert all(not E.per_k[k] for k in range(-3, 0))


def test_discrete_ft_special_classes(all_geometries):
    for g in all_geometries.values():
        for r in dec.reference_basis(g):
            if r.kind != "s_li":
                continue
            D = fourier.discrete_ft(g, NovikovSeries.constant(r.triple), "-", 3)
            val = D.value_at_qw0()
            assert set(val) <= {0}
            assert val[0] == {0: dec.kirwan_map(g, r.triple, "-")}


def test_support_error_when_shifted_out_of_cone(lmp1):
    one = NovikovSeries.constant(EquivariantTriple.one(lmp1))
    with pytest.raises(SupportError):
        fourier.discrete_ft(lmp1, one, "-", 3, base=(0, 0, 4))


def test_kappa_f_rejects_z(dp1):
    from flipspec.equivariant import LZPoly, RationalForm

    t = EquivariantTriple.zero(dp1)
    comp = dp1.components[ZERO]
    t.parts[ZERO] = RationalForm.poly(comp, LZPoly.z(comp.alg))
    with pytest.raises(GeometryError):
        fourier.kappa_F(dp1, t)
