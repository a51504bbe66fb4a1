"""Smooth complete fans and their rational cohomology rings.

The ring is ``Q[x_rho] / (linear relations + Stanley-Reisner ideal)``.  One max
cone ``sigma0`` is fixed; its rays are eliminated through the dual basis, so the
remaining ("free") ray variables generate.  Each graded piece is computed by
row reduction of the Stanley-Reisner ideal in that degree, which needs no
Groebner machinery because the Betti numbers are known in advance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.rings import ring as poly_ring

from . import cones, linalg
from .algebra import Elem, GradedAlgebra, RingMap

IntVec = tuple[int, ...]


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    """Smooth complete simplicial fan given by its maximal cones."""

    rays: tuple[IntVec, ...]
    cones: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    n: int
    _cone_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(c) for c in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(sorted(tuple(sorted(c)) for c in self.cones)))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "_cone_set", frozenset(self.cones))
        self.validate()

    @classmethod
    def from_data(cls, rays: Sequence[Sequence[int]], cones_: Sequence[Sequence[int]], labels=None) -> "Fan":
        rays = [tuple(r) for r in rays]
        n = len(rays[0]) if rays else 0
        if labels is None:
            labels = [f"x{i}" for i in range(len(rays))]
        return cls(tuple(rays), tuple(tuple(c) for c in cones_), tuple(labels), n)

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones], "labels": list(self.labels)}

    # validation
    def validate(self) -> None:
        n = self.n
        if len(set(self.labels)) != len(self.labels) or len(self.labels) != len(self.rays):
            raise FanError("ray labels must be distinct, one per ray")
        if len(set(self.rays)) != len(self.rays):
            raise FanError("rays must be pairwise distinct")
        for r in self.rays:
            if len(r) != n:
                raise FanError("ray of wrong length")
            if _gcd(r) != 1:
                raise FanError(f"ray {r} is not primitive")
        if not self.cones:
            raise FanError("fan has no cones")
        for c in self.cones:
            if len(c) != n:
                raise FanError("every maximal cone must be full-dimensional and simplicial")
            if abs(linalg.det([self.rays[i] for i in c])) != 1:
                raise FanError(f"cone {c} is not smooth")
        if n == 0:
            if self.cones != ((),):
                raise FanError("zero-dimensional fan must be the single empty cone")
            return
        self._check_complete()

    def _check_complete(self) -> None:
        # every wall is shared by exactly two cones lying on opposite sides
        walls: dict[tuple[int, ...], list[int]] = {}
        for ci, c in enumerate(self.cones):
            for w in combinations(c, self.n - 1):
                walls.setdefault(w, []).append(ci)
        for w, owners in walls.items():
            if len(owners) != 2:
                raise FanError("fan is not complete (a wall bounds %d cones)" % len(owners))
            a, b = (self.cones[o] for o in owners)
            ra = next(i for i in a if i not in w)
            rb = next(i for i in b if i not in w)
            wall_rows = [self.rays[i] for i in w]
            sa = linalg.det(wall_rows + [self.rays[ra]])
            sb = linalg.det(wall_rows + [self.rays[rb]])
            if sa * sb >= 0:
                raise FanError("adjacent cones overlap")
        # a generic point lies in exactly one cone
        probe = tuple(Fraction(7 ** (i + 1), 3 + 2 * i) - Fraction(5, 2) for i in range(self.n))
        hits = sum(1 for c in self.cones if self._coords(c, probe) is not None and all(x > 0 for x in self._coords(c, probe)))
        if hits != 1:
            raise FanError("cones do not cover the space exactly once")

    def _coords(self, cone: Sequence[int], v: Sequence) -> list[Fraction] | None:
        cols = [self.rays[i] for i in cone]
        return linalg.solve(linalg.transpose(cols), list(v), len(cone))

    # combinatorics
    def index(self, label: str) -> int:
        return self.labels.index(label)

    def idx(self, items: Sequence[str | int]) -> tuple[int, ...]:
        return tuple(sorted(self.index(x) if isinstance(x, str) else int(x) for x in items))

    def is_cone(self, items: Sequence[str | int]) -> bool:
        s = set(self.idx(items))
        return any(s <= set(c) for c in self.cones)

    def star(self, items: Sequence[str | int]) -> list[int]:
        """Rays ``rho`` not in ``tau`` with ``tau + rho`` a cone."""
        tau = set(self.idx(items))
        out = set()
        for c in self.cones:
            if tau <= set(c):
                out |= set(c) - tau
        return sorted(out)

    def max_cone_containing(self, v: Sequence) -> tuple[tuple[int, ...], list[Fraction]]:
        for c in self.cones:
            x = self._coords(c, v)
            if x is not None and all(t >= 0 for t in x):
                return c, x
        raise FanError(f"vector {tuple(v)} is not in the support")

    @cached_property
    def minimal_nonfaces(self) -> tuple[tuple[int, ...], ...]:
        """Primitive collections: minimal ray sets spanning no cone."""
        faces = set()
        for c in self.cones:
            for k in range(len(c) + 1):
                faces.update(combinations(c, k))
        out = []
        for k in range(2, len(self.rays) + 1):
            for s in combinations(range(len(self.rays)), k):
                if s in faces:
                    continue
                if all(t in faces for t in combinations(s, k - 1)):
                    out.append(s)
        return tuple(out)

    @cached_property
    def walls(self) -> tuple[tuple[tuple[int, ...], int, int], ...]:
        """Codimension-one faces with the two rays completing them to max cones."""
        seen: dict[tuple[int, ...], list[int]] = {}
        if self.n == 0:
            return ()
        for c in self.cones:
            for w in combinations(c, self.n - 1):
                seen.setdefault(w, []).append(next(i for i in c if i not in w))
        return tuple((w, a, b) for w, (a, b) in sorted(seen.items()))

    def wall_curve(self, wall: tuple[int, ...], a: int, b: int) -> tuple[Fraction, ...]:
        """Intersection vector ``(C . D_rho)_rho`` of the torus-invariant curve of a wall."""
        sigma = tuple(sorted(wall + (a,)))
        x = self._coords(sigma, self.rays[b])
        vec = [Fraction(0)] * len(self.rays)
        vec[a] = Fraction(1)
        vec[b] = Fraction(1)
        for i, c in zip(sigma, x):
            if i != a:
                vec[i] = -c
        return tuple(vec)

    def betti(self) -> tuple[int, ...]:
        return cohomology_ring(self).alg.betti


def _gcd(v: Sequence[int]) -> int:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# constructions

def point() -> Fan:
    return Fan((), ((),), (), 0)


def projective_space(n: int, prefix: str = "x") -> Fan:
    if n < 1:
        raise FanError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    labels = [f"{prefix}{i}" for i in range(1, n + 1)] + [f"{prefix}0"]
    return Fan.from_data(rays, list(combinations(range(n + 1), n)), labels)


def _degree_vector(base: Fan, d) -> tuple[int, ...]:
    if isinstance(d, Mapping):
        v = [0] * len(base.rays)
        for k, c in d.items():
            v[base.index(k) if isinstance(k, str) else k] += int(c)
        return tuple(v)
    d = tuple(d)
    if len(d) != len(base.rays):
        raise FanError("degree must give one coefficient per base ray")
    for c in d:
        if Fraction(c).denominator != 1:
            raise FanError("degree data must be integral divisors")
    return tuple(int(c) for c in d)


def projective_bundle(base: Fan, degrees: Sequence, fiber_labels: Sequence[str] | None = None) -> Fan:
    """Fan of ``P(O(D_0) + ... + O(D_{r-1}))`` (lines) over ``base``.

    ``degrees[i]`` is a torus-invariant divisor given by ray coefficients.  The
    fiber ray ``fiber_labels[i]`` cuts out ``zeta + D_i`` where ``zeta`` is the
    first Chern class of the tautological quotient ``O(1)``.
    """
    r = len(degrees)
    if r < 1:
        raise FanError("bundle rank must be positive")
    if r == 1:
        # P(L) is the base; there are no fiber rays to label
        return base
    if fiber_labels is None:
        fiber_labels = [f"f{i}" for i in range(r)]
    if len(fiber_labels) != r:
        raise FanError("one fiber label per summand")
    ds = [_degree_vector(base, d) for d in degrees]
    n = base.n
    rays = []
    for j, u in enumerate(base.rays):
        rays.append(tuple(u) + tuple(-(ds[i][j] - ds[0][j]) for i in range(1, r)))
    nb = len(rays)
    fiber = [tuple([0] * n + [-1] * (r - 1))]
    for i in range(1, r):
        fiber.append(tuple([0] * n + [int(k == i - 1) for k in range(r - 1)]))
    rays += fiber
    out_cones = []
    for c in base.cones:
        for skip in range(r):
            out_cones.append(tuple(c) + tuple(nb + i for i in range(r) if i != skip))
    return Fan.from_data(rays, out_cones, list(base.labels) + list(fiber_labels))


def star_subdivision(fan: Fan, items: Sequence[str | int], label: str = "e") -> Fan:
    """Blowup of the orbit closure of ``tau`` (star subdivision at the ray sum)."""
    tau = fan.idx(items)
    if len(tau) <= 1:
        raise FanError("center must be a cone of dimension at least two")
    if not fan.is_cone(tau):
        raise FanError("center is not a cone of the fan")
    if label in fan.labels:
        raise FanError("new ray label already used")
    v = tuple(sum(fan.rays[i][k] for i in tau) for k in range(fan.n))
    new = len(fan.rays)
    out = []
    for c in fan.cones:
        if set(tau) <= set(c):
            for rho in tau:
                out.append(tuple(i for i in c if i != rho) + (new,))
        else:
            out.append(c)
    return Fan.from_data(list(fan.rays) + [v], out, list(fan.labels) + [label])


def quotient_fan(fan: Fan, items: Sequence[str | int]) -> Fan:
    """Fan of the orbit closure ``V(tau)``, keeping the labels of the star rays."""
    tau = fan.idx(items)
    star = fan.star(tau)
    sigma0 = next(c for c in fan.cones if set(tau) <= set(c))
    keep = [k for k, i in enumerate(sigma0) if i not in tau]
    binv = linalg.inverse(linalg.transpose([fan.rays[i] for i in sigma0]))
    rays = []
    for i in star:
        x = linalg.matvec(binv, fan.rays[i])
        rays.append(tuple(int(x[k]) for k in keep))
    pos = {i: k for k, i in enumerate(star)}
    out = [tuple(pos[i] for i in c if i not in tau) for c in fan.cones if set(tau) <= set(c)]
    return Fan.from_data(rays, out, [fan.labels[i] for i in star])


def transform(fan: Fan, matrix: Sequence[Sequence[int]]) -> Fan:
    """Apply a unimodular lattice automorphism to every ray."""
    if abs(linalg.det(matrix)) != 1:
        raise FanError("lattice map must be unimodular")
    rays = [tuple(int(x) for x in linalg.matvec(matrix, u)) for u in fan.rays]
    return Fan.from_data(rays, fan.cones, fan.labels)


def isomorphic(f1: Fan, f2: Fan) -> dict[int, int] | None:
    """A ray bijection induced by a unimodular lattice map, or None."""
    if f1.n != f2.n or len(f1.rays) != len(f2.rays) or len(f1.cones) != len(f2.cones):
        return None
    if f1.n == 0:
        return {}
    from itertools import permutations

    c1 = f1.cones[0]
    b1inv = linalg.inverse(linalg.transpose([f1.rays[i] for i in c1]))
    rayset2 = {r: i for i, r in enumerate(f2.rays)}
    cones2 = set(f2.cones)
    for c2 in f2.cones:
        for perm in permutations(c2):
            img = linalg.transpose([f2.rays[i] for i in perm])
            a = linalg.matmul(img, b1inv)
            mapping = {}
            ok = True
            for i, u in enumerate(f1.rays):
                v = tuple(linalg.matvec(a, u))
                if any(x.denominator != 1 for x in v):
                    ok = False
                    break
                j = rayset2.get(tuple(int(x) for x in v))
                if j is None:
                    ok = False
                    break
                mapping[i] = j
            if ok and all(tuple(sorted(mapping[i] for i in c)) in cones2 for c in f1.cones):
                return mapping
    return None


# cohomology

class ToricRing:
    """Rational cohomology ring of a smooth complete toric variety."""

    def __init__(self, fan: Fan, name: str = "X"):
        self.fan = fan
        self.name = name
        n = fan.n
        self.sigma0 = fan.cones[0]
        self.free = tuple(i for i in range(len(fan.rays)) if i not in self.sigma0)
        k = len(self.free)
        names = [fan.labels[i] for i in self.free]
        self._R = poly_ring(",".join(f"v{i}" for i in range(k)), QQ)[0] if k else poly_ring("", QQ)[0]
        R = self._R
        gens = R.gens
        # linear forms for every ray in the free variables
        binv = linalg.inverse(linalg.transpose([fan.rays[i] for i in self.sigma0])) if n else []
        self.lin = {}
        for pos, i in enumerate(self.free):
            self.lin[i] = gens[pos]
        for row, i in enumerate(self.sigma0):
            form = R.zero
            for pos, j in enumerate(self.free):
                c = linalg.matvec(binv, fan.rays[j])[row]
                if c:
                    form -= QQ(c.numerator, c.denominator) * gens[pos]
            self.lin[i] = form
        sr = []
        for s in fan.minimal_nonfaces:
            p = R.one
            for i in s:
                p = p * self.lin[i]
            sr.append((len(s), p))
        self._sr = sr
        self._cols: dict[int, list[tuple[int, ...]]] = {}
        self._col_index: dict[int, dict[tuple[int, ...], int]] = {}
        self._rows: dict[int, tuple[list, tuple[int, ...]]] = {}
        std_all = []
        for d in range(n + 1):
            cols = sorted(_monomials(k, d), reverse=True)
            self._cols[d] = cols
            self._col_index[d] = {m: j for j, m in enumerate(cols)}
            rows = []
            for e, g in sr:
                if e > d:
                    continue
                for m in _monomials(k, d - e):
                    rows.append(self._vector(g * R({m: QQ(1)}), d))
            red, piv = linalg.rref(rows, len(cols)) if rows else ([], ())
            self._rows[d] = (red, piv)
            std_all.extend(cols[j] for j in range(len(cols)) if j not in set(piv))
        if len(std_all) != len(fan.cones):
            raise FanError("ring rank does not match the number of max cones")
        self.std = std_all
        self._std_index = {m: i for i, m in enumerate(std_all)}
        top_std = [i for i, m in enumerate(std_all) if sum(m) == n]
        if len(top_std) != 1:
            raise FanError("top degree is not one-dimensional")
        table = {}
        for i, a in enumerate(std_all):
            for j, b in enumerate(std_all):
                if j < i:
                    if (j, i) in table:
                        table[(i, j)] = table[(j, i)]
                    continue
                m = tuple(x + y for x, y in zip(a, b))
                if sum(m) > n:
                    continue
                table[(i, j)] = self._nf_monomial(m)
        top = [Fraction(0)] * len(std_all)
        vol = self._nf_poly_vector(_prod(self.lin[i] for i in self.sigma0) if n else R.one, n)
        coef = vol.get(top_std[0], Fraction(0))
        if coef == 0:
            raise FanError("fundamental class vanishes")
        top[top_std[0]] = 1 / coef
        gen_images = []
        for pos in range(k):
            e = tuple(int(q == pos) for q in range(k))
            v = [Fraction(0)] * len(std_all)
            for idx, c in self._nf_monomial(e):
                v[idx] = c
            gen_images.append(v)
        self.alg = GradedAlgebra(name, names, std_all, table, top, gen_images)
        for c in fan.cones:
            if self.alg.integrate(self.monomial(c)) != 1:
                raise FanError("integration is inconsistent across max cones")

    def __repr__(self):
        return f"<ToricRing {self.name} betti={self.alg.betti}>"

    def _vector(self, p, d: int) -> list[Fraction]:
        v = [Fraction(0)] * len(self._cols[d])
        idx = self._col_index[d]
        for m, c in p.terms():
            v[idx[m]] += Fraction(int(c.numerator), int(c.denominator))
        return v

    def _reduce(self, v: list[Fraction], d: int) -> list[Fraction]:
        red, piv = self._rows[d]
        v = list(v)
        for row, p in zip(red, piv):
            c = v[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= c * x
        return v

    def _nf_monomial(self, m: tuple[int, ...]) -> list[tuple[int, Fraction]]:
        d = sum(m)
        v = [Fraction(0)] * len(self._cols[d])
        v[self._col_index[d][m]] = Fraction(1)
        v = self._reduce(v, d)
        cols = self._cols[d]
        return [(self._std_index[cols[j]], c) for j, c in enumerate(v) if c]

    def _nf_poly_vector(self, p, d: int) -> dict[int, Fraction]:
        v = self._reduce(self._vector(p, d), d)
        cols = self._cols[d]
        return {self._std_index[cols[j]]: c for j, c in enumerate(v) if c}

    # classes
    def x(self, label: str | int) -> Elem:
        i = self.fan.index(label) if isinstance(label, str) else label
        return self._linear(self.lin[i])

    def _linear(self, form) -> Elem:
        v = [Fraction(0)] * self.alg.rank
        if self.fan.n == 0:
            return self.alg.zero()
        for idx, c in self._nf_poly_vector(form, 1).items():
            v[idx] = c
        return self.alg.from_vector(v)

    def ray_classes(self) -> list[Elem]:
        return [self.x(i) for i in range(len(self.fan.rays))]

    def divisor(self, coeffs: Mapping[str | int, Fraction] | Sequence) -> Elem:
        out = self.alg.zero()
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        for k, c in items:
            if c:
                out = out + self.x(k) * Fraction(c)
        return out

    def monomial(self, items: Sequence[str | int]) -> Elem:
        out = self.alg.one()
        for i in items:
            out = out * self.x(i)
        return out

    def c1(self) -> Elem:
        return sum(self.ray_classes(), self.alg.zero())

    # divisors and curves
    def divisor_coordinates(self, a: Elem) -> list[Fraction]:
        """Coordinates of a degree-one class in the free ray variables."""
        if a.ring is not self.alg:
            raise ValueError("class not in this ring")
        if a.degrees_present() not in ([], [1]):
            raise ValueError("not a divisor class")
        out = []
        for pos in range(len(self.free)):
            e = tuple(int(q == pos) for q in range(len(self.free)))
            out.append(a.coeffs[self._std_index[e]])
        return out

    def curve_from_intersections(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of a curve: its degrees on the free ray divisors."""
        return tuple(Fraction(vec[i]) for i in self.free)

    def intersection_vector(self, coords: Sequence) -> tuple[Fraction, ...]:
        """Degrees on every ray divisor of the curve with free-divisor degrees ``coords``."""
        return tuple(self.pair(self.x(i), coords) for i in range(len(self.fan.rays)))

    def pair(self, divisor: Elem, curve_coords: Sequence) -> Fraction:
        return sum((a * Fraction(b) for a, b in zip(self.divisor_coordinates(divisor), curve_coords)), Fraction(0))

    @cached_property
    def mori_generators(self) -> list[tuple[Fraction, ...]]:
        """Extremal wall curves, as free-divisor coordinates."""
        curves = [self.curve_from_intersections(self.fan.wall_curve(*w)) for w in self.fan.walls]
        gens = cones.extremal_generators(curves)
        return sorted(gens)

    def in_mori_cone(self, coords: Sequence) -> bool:
        return cones.in_cone(self.mori_generators, coords) is not None

    def is_fano(self) -> bool:
        c1 = self.c1()
        return all(self.pair(c1, g) > 0 for g in self.mori_generators)


def _monomials(k: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(k), d):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _prod(items):
    it = iter(items)
    out = next(it)
    for x in it:
        out = out * x
    return out


_RING_CACHE: dict[tuple, ToricRing] = {}


def cohomology_ring(fan: Fan, name: str = "X") -> ToricRing:
    key = (fan.rays, fan.cones, fan.labels, name)
    if key not in _RING_CACHE:
        _RING_CACHE[key] = ToricRing(fan, name)
    return _RING_CACHE[key]


# morphisms

def pullback(source: ToricRing, target: ToricRing, matrix: Sequence[Sequence[int]] | None = None) -> RingMap:
    """``f^*: H(target) -> H(source)`` for a toric morphism given by a lattice map.

    ``matrix`` maps the source lattice to the target lattice (identity if None).
    """
    fs, ft = source.fan, target.fan
    if matrix is None:
        matrix = [[int(i == j) for j in range(fs.n)] for i in range(ft.n)]
    images_of_rays = {}
    for i, u in enumerate(fs.rays):
        v = linalg.matvec(matrix, u)
        c, x = ft.max_cone_containing(v)
        images_of_rays[i] = dict(zip(c, x))
    for c in fs.cones:
        common = None
        for i in c:
            cone_i = {j for j, x in images_of_rays[i].items() if x}
            common = cone_i if common is None else common | cone_i
        if not ft.is_cone(sorted(common or ())):
            raise FanError("lattice map does not send cones into cones")
    gen_imgs = []
    for rho in target.free:
        out = source.alg.zero()
        for i in range(len(fs.rays)):
            c = images_of_rays[i].get(rho, 0)
            if c:
                out = out + source.x(i) * Fraction(c)
        gen_imgs.append(out)
    return target.alg.hom(source.alg, gen_imgs)


def restriction_to_orbit(ring: ToricRing, items: Sequence[str | int], target: GradedAlgebra,
                         images: Mapping[str, Elem]) -> RingMap:
    """Restriction to ``V(tau)`` given the images of the star-ray divisors.

    Rays outside the star restrict to zero; rays of ``tau`` are eliminated by
    the linear relation coming from a dual vector of a max cone containing
    ``tau``.
    """
    fan = ring.fan
    tau = fan.idx(items)
    star = set(fan.star(tau))
    sigma = next(c for c in fan.cones if set(tau) <= set(c))
    binv = linalg.inverse(linalg.transpose([fan.rays[i] for i in sigma]))
    ray_img: dict[int, Elem] = {}
    for i in range(len(fan.rays)):
        if i in star:
            ray_img[i] = images[fan.labels[i]]
        elif i not in tau:
            ray_img[i] = target.zero()
    for i in tau:
        row = sigma.index(i)
        out = target.zero()
        for j in range(len(fan.rays)):
            if j in tau:
                continue
            c = linalg.matvec(binv, fan.rays[j])[row]
            if c:
                out = out - ray_img[j] * c
        ray_img[i] = out
    return ring.alg.hom(target, [ray_img[i] for i in ring.free])
