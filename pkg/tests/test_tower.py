from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipspec import toric
from flipspec.examples import TOWER_CASES, tower_vs_toric
from flipspec.tower import TowerRing, bundle_generator_images, compare_with_toric, elementary_symmetric, zeta_class


def base_ring(n):
    return toric.cohomology_ring(toric.projective_space(n), f"P{n}")


def test_relation_over_p1():
    B = base_ring(1)
    H = B.x("x0")
    T = TowerRing(B.alg, [B.alg.zero(), H])
    assert T.alg.rank == 4
    h = T.h
    assert (h * h + T.psi(H) * h).is_zero()


def test_trivial_bundle_over_point_is_p2():
    pt = toric.cohomology_ring(toric.point(), "pt")
    T = TowerRing(pt.alg, [pt.alg.zero()] * 3)
    assert T.alg.betti == (1, 1, 1)
    assert T.integrate(T.h ** 2) == 1


def test_rank_three_over_p2():
    B = base_ring(2)
    H = B.x("x0")
    T = TowerRing(B.alg, [-H, -H, B.alg.zero()])
    assert T.alg.rank == 9


def test_segre_pushforwards():
    B = base_ring(1)
    H = B.x("x0")
    trivial = TowerRing(B.alg, [B.alg.zero(), B.alg.zero()])
    assert trivial.push(trivial.h) == B.alg.one()
    assert trivial.push(trivial.alg.one()).is_zero()
    twisted = TowerRing(B.alg, [B.alg.zero(), H])
    assert twisted.push(twisted.h ** 2) == -H


@pytest.mark.parametrize("name", sorted(TOWER_CASES))
def test_tower_matches_toric(name):
    n, degs = TOWER_CASES[name]
    rep = tower_vs_toric(n, degs)
    assert rep["ok"], rep


def test_p1xp1_both_ways():
    assert tower_vs_toric(1, [{}, {}])["ok"]


def test_dimension_mismatch_reported():
    B = base_ring(1)
    T = TowerRing(B.alg, [B.alg.zero(), B.x("x0")])
    P2 = base_ring(2)
    rep = compare_with_toric(T, P2.alg, [P2.x("x0"), P2.x("x0")])
    assert not rep["ok"] and rep["reason"] == "dimension mismatch"


def test_elementary_symmetric():
    B = base_ring(2)
    H = B.x("x0")
    e = elementary_symmetric(B.alg, [H, H * 2])
    assert e[1] == H * 3 and e[2] == H * H * 2


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(min_value=-2, max_value=2), min_size=2, max_size=3))
def test_tower_over_p1_matches_toric_for_random_splittings(ds):
    degs = [{"x1": d} for d in ds]
    rep = tower_vs_toric(1, degs)
    assert rep["ok"], rep
    assert rep["tower_betti"] == rep["toric_betti"]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(min_value=-2, max_value=2), min_size=2, max_size=3))
def test_projection_formula_in_tower(ds):
    B = base_ring(1)
    H = B.x("x0")
    T = TowerRing(B.alg, [H * d for d in ds])
    for x in T.alg.basis_elems():
        for b in B.alg.basis_elems():
            assert T.push(x * T.psi(b)) == T.push(x) * b


def test_line_bundle_projectivization_is_the_base():
    base = toric.projective_space(2)
    assert toric.projective_bundle(base, [{"x1": 3}]) is base
