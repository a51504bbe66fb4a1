"""Named geometries used by the acceptance suite and the CLI."""

from __future__ import annotations

from . import toric
from .geometry import ThreeComponentGeometry, build_blowup_geometry, build_local_model_geometry


def blowup_point(n: int) -> ThreeComponentGeometry:
    """Blowup of ``P^n`` at a torus-fixed point."""
    X = toric.projective_space(n)
    return build_blowup_geometry(X, [f"x{i}" for i in range(1, n + 1)])


def local_model_point(r_plus: int, r_minus: int) -> ThreeComponentGeometry:
    S = toric.point()
    return build_local_model_geometry(S, [()] * r_plus, [()] * r_minus)


def local_model_p1() -> ThreeComponentGeometry:
    """Base ``P^1`` with ``V_+ = O(1)`` and ``V_- = O + O``."""
    S = toric.projective_space(1)
    return build_local_model_geometry(S, [{"x1": 1}], [{}, {}])


CRITERION_GEOMETRIES = {
    "blowup(P2,pt)": lambda: blowup_point(2),
    "blowup(P3,pt)": lambda: blowup_point(3),
    "local_model(pt,1,2)": lambda: local_model_point(1, 2),
    "local_model(pt,2,3)": lambda: local_model_point(2, 3),
    "local_model(P1,O(1),O+O)": local_model_p1,
}


def tower_vs_toric(base_n: int, degrees: list) -> dict:
    """Compare the tower presentation of ``P(sum O(d_i))`` over ``P^base_n`` with its toric fan."""
    from .tower import TowerRing, bundle_generator_images, compare_with_toric, zeta_class

    base = toric.projective_space(base_n)
    B = toric.cohomology_ring(base, "B")
    labels = [f"f{i}" for i in range(len(degrees))]
    fan = toric.projective_bundle(base, degrees, labels)
    ring = toric.cohomology_ring(fan, "PV")
    tower = TowerRing(B.alg, [B.divisor(toric._degree_vector(base, d)) for d in degrees], "PV_tower")
    deg0 = dict(zip(base.labels, toric._degree_vector(base, degrees[0])))
    zeta = zeta_class(ring, labels[0], deg0)
    images = bundle_generator_images(ring, [base.labels[i] for i in B.free], zeta)
    return compare_with_toric(tower, ring.alg, images)


TOWER_CASES = {
    "F1 = P(O + O(-1)) over P1": (1, [{}, {"x1": -1}]),
    "P(O(-1)^2 + O) over P1": (1, [{"x1": -1}, {"x1": -1}, {}]),
}
