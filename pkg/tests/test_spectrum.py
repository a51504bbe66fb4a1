import cmath

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from flipspec import spectrum, toric
from flipspec.spectrum import LAM, T, OracleError


def test_euler_field_examples():
    P2 = toric.cohomology_ring(toric.projective_space(2))
    assert spectrum.euler_field_at_origin(P2) == P2.x("x0") * 3
    P1xP1 = toric.cohomology_ring(toric.projective_bundle(toric.projective_space(1), [{}, {}]))
    c1 = spectrum.euler_field_at_origin(P1xP1)
    assert c1 == sum(P1xP1.ray_classes()[1:], P1xP1.ray_classes()[0])
    assert P1xP1.alg.integrate(c1 * c1) == 8


def test_euler_field_dp1(dp1):
    R = dp1.Xm
    assert spectrum.euler_field_at_origin(R) == sum(R.ray_classes()[1:], R.ray_classes()[0])
    assert R.alg.integrate(R.c1() ** 2) == 8


# exact characteristic polynomials

def _charpoly(oracle):
    return sp.expand(sp.together(oracle.charpoly().as_expr()))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_space_charpoly(n):
    assert sp.expand(_charpoly(spectrum.projective_space_oracle(n)) - (LAM ** (n + 1) - (n + 1) ** (n + 1) * T)) == 0


def test_dp1_charpoly(dp1):
    cp = _charpoly(spectrum.oracle_for_geometry(dp1))
    assert sp.expand(cp - LAM ** 3 * (LAM + T)) == 0


def test_blowup_p3_charpoly(blp3):
    cp = _charpoly(spectrum.oracle_for_geometry(blp3))
    assert sp.expand(cp - LAM ** 4 * (LAM ** 2 + 4 * T)) == 0


def test_oracle_commutes(dp1, blp3):
    for g in (dp1, blp3):
        assert spectrum.oracle_for_geometry(g).commuting_check(2.5)


def test_repeated_zero_keeps_accuracy(blp3):
    o = spectrum.oracle_for_geometry(blp3)
    ev = o.eigenvalues(2.5)
    assert sum(abs(z) < 1e-14 for z in ev) == 4


def test_non_fano_refused():
    F2 = toric.projective_bundle(toric.projective_space(1), [{}, {"x1": 2}])
    with pytest.raises(OracleError):
        spectrum.batyrev_quantum_ring(F2, spectrum.line_assignment([1, 0]))


def test_curve_multiple():
    assert spectrum.curve_multiple([2, 4], [1, 2]) == 2
    assert spectrum.curve_multiple([2, 3], [1, 2]) is None
    assert spectrum.curve_multiple([0, 1], [0, 2]) == sp.Rational(1, 2)
    q = spectrum.line_assignment([1, 2])
    assert q([1, 2]) == T and q([-1, -2]) == 0 and q([1, 0]) == 0


# prediction

def test_prediction_at_zero(dp1):
    p = spectrum.predicted_spectrum(dp1, 0)
    assert p.values == [0j] * 4


def test_prediction_dp1(dp1):
    p = spectrum.predicted_spectrum(dp1, 2.5)
    nonzero = [z for z in p.values if z != 0]
    assert nonzero == pytest.approx([-2.5])


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 10), st.floats(-3.1, 3.1))
def test_prediction_closed_under_rotation(blp3, r, theta):
    t = r * cmath.exp(1j * theta)
    vals = [z for z in spectrum.predicted_spectrum(blp3, t).values if z != 0]
    assert len(vals) == 2
    # the nonzero part is closed under multiplication by exp(2 pi i / |c|)
    rotated = [z * cmath.exp(2j * cmath.pi / 2) for z in vals]
    assert spectrum.spectrum_compare(vals, rotated, 1e-12)["pass"]
    for z in vals:
        assert z * z == pytest.approx(-4 * t)


@pytest.mark.parametrize("t", [1.0, 2.5, cmath.exp(1j * cmath.pi / 7)])
def test_prediction_matches_oracle(dp1, blp3, t):
    for g in (dp1, blp3):
        pred = spectrum.predicted_spectrum(g, t).values
        assert spectrum.spectrum_compare(pred, spectrum.oracle_for_geometry(g).eigenvalues(t), 1e-9)["pass"]


def test_perturbed_prediction_fails(dp1):
    o = spectrum.oracle_for_geometry(dp1).eigenvalues(2.5)
    pred = spectrum.predicted_spectrum(dp1, 2.5 * (1 + 1e-6)).values
    assert not spectrum.spectrum_compare(pred, o, 1e-9)["pass"]


def test_multiplicity_mismatch():
    with pytest.raises(ValueError):
        spectrum.spectrum_compare([0, 1], [0], 1e-9)


def test_csv_rows_group_multiplicities():
    rows = spectrum.spectrum_csv_rows([0, 0, -1], [0j, 0j, -1 + 1e-16j])
    assert (0.0, 0.0, 2, "predicted") in rows
    assert (-1.0, 0.0, 1, "oracle") in rows
