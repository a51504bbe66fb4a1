from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipspec import toric
from flipspec.toric import FanError, cohomology_ring


def ring(fan, name="X"):
    return cohomology_ring(fan, name)


def p1xp1():
    return toric.projective_bundle(toric.projective_space(1), [{}, {}])


def dp1():
    return toric.star_subdivision(toric.projective_space(2), ["x1", "x2"], "e")


# fans

def test_p1_fan():
    f = toric.projective_space(1)
    assert len(f.rays) == 2 and len(f.cones) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space_betti(n):
    assert ring(toric.projective_space(n)).alg.betti == (1,) * (n + 1)


def test_bundle_over_p1_is_hirzebruch_f1():
    f = toric.projective_bundle(toric.projective_space(1), [{}, {"x1": 1}])
    ref = toric.Fan.from_data([(1, 0), (0, 1), (-1, -1), (1, 1)], [(0, 3), (3, 1), (1, 2), (2, 0)])
    assert toric.isomorphic(f, ref) is not None
    assert toric.isomorphic(f, dp1()) is not None


def test_trivial_bundle_over_p1_is_product():
    assert ring(p1xp1()).alg.betti == (1, 2, 1)


def test_trivial_bundle_over_point_is_p2():
    f = toric.projective_bundle(toric.point(), [(), (), ()])
    assert toric.isomorphic(f, toric.projective_space(2)) is not None


def test_bundle_betti_is_convolution():
    base = toric.projective_space(2)
    f = toric.projective_bundle(base, [{}, {"x1": -1}, {"x1": -1}])
    assert ring(f).alg.betti == (1, 2, 3, 2, 1)


def test_blowup_point_of_p2():
    f = dp1()
    assert len(f.rays) == 4
    assert ring(f).alg.betti == (1, 2, 1)


def test_blowup_of_fixed_point_in_p2_x_p1_adds_one_ray():
    base = toric.projective_bundle(toric.projective_space(2), [{}, {}], ["t0", "t1"])
    assert len(base.rays) == 5
    blown = toric.star_subdivision(base, ["x1", "x2", "t1"], "e")
    assert blown.n == 3 and len(blown.rays) == 6
    assert ring(blown).alg.betti == (1, 3, 3, 1)


def test_blowup_of_a_ray_is_rejected():
    with pytest.raises(FanError):
        toric.star_subdivision(toric.projective_space(2), ["x1"])


def test_incomplete_fan_is_rejected():
    with pytest.raises(FanError):
        toric.Fan.from_data([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])


def test_singular_cone_is_rejected():
    with pytest.raises(FanError):
        toric.Fan.from_data([(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (2, 0)])


# rings

def test_p2_integral():
    R = ring(toric.projective_space(2))
    H = R.x("x0")
    assert R.alg.integrate(H * H) == 1


def test_dp1_exceptional_self_intersection():
    R = ring(dp1())
    E = R.x("e")
    assert R.alg.integrate(E * E) == -1


def test_p1xp1_integrals():
    R = ring(p1xp1())
    h1, h2 = R.x("x0"), R.x("f0")
    assert R.alg.integrate(h1 * h2) == 1
    assert R.alg.integrate(h1 * h1) == 0


@pytest.mark.parametrize("fan", [toric.projective_space(3), dp1(), p1xp1(),
                                 toric.projective_bundle(toric.projective_space(1), [{"x1": -1}, {"x1": -1}, {}])])
def test_ring_axioms(fan):
    A = ring(fan).alg
    assert A.check_associative()
    assert len(A.pairing_inverse) == A.rank
    bs = A.basis_elems()
    for x in bs:
        for y in bs:
            assert x * y == y * x


def test_every_max_cone_integrates_to_one():
    R = ring(toric.projective_space(3))
    for c in R.fan.cones:
        assert R.alg.integrate(R.monomial(c)) == 1


# morphisms

def test_blowdown_pushforward():
    X, Y = ring(dp1(), "Bl"), ring(toric.projective_space(2), "P2")
    pi = toric.pullback(X, Y)
    assert pi.is_multiplicative()
    assert pi.pushforward(X.alg.one()) == Y.alg.one()
    assert pi.pushforward(pi(Y.x("x0")) * X.x("e")).is_zero()
    pt_x = X.monomial(X.fan.cones[0])
    assert pi.pushforward(pt_x) == Y.monomial(Y.fan.cones[0])


def test_projection_formula_on_basis_pairs():
    X, Y = ring(dp1(), "Bl"), ring(toric.projective_space(2), "P2")
    pi = toric.pullback(X, Y)
    for a in X.alg.basis_elems():
        for b in Y.alg.basis_elems():
            assert pi.pushforward(a * pi(b)) == pi.pushforward(a) * b


# Mori cone

def test_mori_p2():
    R = ring(toric.projective_space(2))
    (ell,) = R.mori_generators
    assert R.pair(R.x("x0"), ell) == 1


def test_mori_dp1():
    R = ring(dp1())
    gens = R.mori_generators
    assert len(gens) == 2
    assert sorted(R.pair(R.x("e"), g) for g in gens) == [-1, 1]


def test_mori_p1xp1():
    R = ring(p1xp1())
    gens = R.mori_generators
    h1, h2 = R.x("x0"), R.x("f0")
    pairs = sorted((R.pair(h1, g), R.pair(h2, g)) for g in gens)
    assert pairs == [(0, 1), (1, 0)]


def test_fano_detection():
    f2 = toric.projective_bundle(toric.projective_space(1), [{}, {"x1": 2}])
    assert not ring(f2).is_fano()
    assert ring(dp1()).is_fano()


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data())
def test_subdividing_any_cone_of_pn_gives_expected_betti(n, data):
    P = toric.projective_space(n)
    k = data.draw(st.integers(min_value=2, max_value=n)) if n >= 2 else None
    if k is None:
        return
    items = data.draw(st.sampled_from(list(combinations(P.labels, k))))
    blown = toric.star_subdivision(P, list(items))
    b = ring(blown).alg.betti
    # a codim-k linear subspace adds P^{k-1}-bundle classes in degrees 1..k-1
    expected = [1] * (n + 1)
    base_dim = n - k
    for i in range(1, k):
        for j in range(base_dim + 1):
            expected[i + j] += 1
    assert list(b) == expected
