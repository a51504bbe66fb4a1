"""The twelve acceptance criteria as plain functions.

Each returns a :class:`Result`.  Details never contain timings; runtime limits
only enter the pass flag.
"""

from __future__ import annotations

import cmath
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import decomposition as dec
from . import fourier, spectrum
from .equivariant import NovikovSeries, shift_S
from .examples import CRITERION_GEOMETRIES, TOWER_CASES, blowup_point, tower_vs_toric
from .geometry import MINUS, PLUS, ZERO
from .reports import dumps, fourier_report

LOCI = (1.0, 2.5, cmath.exp(1j * cmath.pi / 7))
LOCUS_LABELS = ("1", "2.5", "exp(i*pi/7)")


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d}: {self.title}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "pass": self.passed, "detail": self.detail}


def _geometries():
    return {name: mk() for name, mk in CRITERION_GEOMETRIES.items()}


def _spectrum_blowup(n: int, number: int, title: str, tol: float) -> Result:
    start = time.perf_counter()
    g = blowup_point(n)
    oracle = spectrum.oracle_for_geometry(g)
    rows, ok = {}, True
    for lab, t in zip(LOCUS_LABELS, LOCI):
        cmp = spectrum.spectrum_compare(spectrum.predicted_spectrum(g, t).values, oracle.eigenvalues(t), tol)
        rows[lab] = cmp["pass"]
        ok &= cmp["pass"]
    fast = time.perf_counter() - start < 1.0
    return Result(number, title, bool(ok and fast), {"loci": rows, "runtime_under_1s": fast})


def criterion_1(tol: float = 1e-9, order: int = 3) -> Result:
    return _spectrum_blowup(2, 1, "spectrum of blowup(P2,pt) matches the dP1 quantum ring", tol)


def criterion_2(tol: float = 1e-9, order: int = 3) -> Result:
    return _spectrum_blowup(3, 2, "spectrum of blowup(P3,pt) matches its quantum ring", tol)


def criterion_3(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for n in (1, 2, 3):
        oracle = spectrum.projective_space_oracle(n)
        for lab, t in zip(LOCUS_LABELS, LOCI):
            root = complex(t) ** (1.0 / (n + 1))
            pred = [(n + 1) * root * cmath.exp(2j * cmath.pi * k / (n + 1)) for k in range(n + 1)]
            cmp = spectrum.spectrum_compare(pred, oracle.eigenvalues(t), tol)
            rows[f"P{n} t={lab}"] = cmp["pass"]
            ok &= cmp["pass"]
    return Result(3, "oracle self-test on P1, P2, P3", bool(ok), rows)


def criterion_4(tol: float = 1e-9, order: int = 3) -> Result:
    start = time.perf_counter()
    rows, ok = {}, True
    for name, g in _geometries().items():
        D = dec.decomposition_map(g)
        good = D.invertible and D.grading_ok and g.dimension_identity()
        rows[name] = {"size": D.size, "invertible": D.invertible, "dimension_identity": g.dimension_identity(),
                      "grading": D.grading_ok}
        ok &= good
    fast = time.perf_counter() - start < 5.0
    return Result(4, "classical decomposition is invertible", bool(ok and fast), {"geometries": rows, "runtime_under_5s": fast})


def criterion_5(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, g in _geometries().items():
        P = dec.pairing_identities_check(g)
        rows[name] = {"ok": P["ok"], "checked": P["checked"]}
        ok &= P["ok"]
    g = blowup_point(2)
    E = g.exceptional
    self_int = g.Xm.alg.integrate(E * E)
    sign_ok = self_int == -1 == (-1) ** g.r_plus
    rows["dP1 [E]^2"] = str(self_int)
    return Result(5, "pairing identities over full bases", bool(ok and sign_ok), rows)


def criterion_6(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, g in _geometries().items():
        E = dec.exceptional_restriction_check(g)
        rows[name] = {"ok": E["ok"], "checked": E["checked"]}
        ok &= E["ok"]
    return Result(6, "exceptional restriction rule", bool(ok), rows)


def criterion_7(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, g in _geometries().items():
        count, good = 0, True
        for r in dec.reference_basis(g):
            x = NovikovSeries.constant(r.triple, order)
            for k in range(-3, 4):
                count += 1
                good &= shift_S(g, shift_S(g, x, k), -k).equals(x)
        rows[name] = {"ok": good, "checked": count}
        ok &= good
    return Result(7, "shift operator group law for |k| <= 3", bool(ok), rows)


def criterion_8(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, g in _geometries().items():
        try:
            rep, _ = fourier_report(g, order)
        except fourier.SupportError as exc:
            rows[name] = {"support_in_dual_cone": False, "error": str(exc)}
            ok = False
            continue
        vanish = rep["discrete"]["1 -> X-"]["positive_k_vanish"]
        special = all(v["match"] for v in rep["special_leading_terms"].values())
        rows[name] = {"positive_k_vanish": vanish, "support_in_dual_cone": True,
                      "special_leading_terms": special, "count": len(rep["special_leading_terms"])}
        ok &= vanish and special
    return Result(8, "discrete FT support and leading terms", bool(ok), rows)


def criterion_9(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, g in _geometries().items():
        F = g.components[ZERO]
        idents = [fourier.lambda_identity(F, j) for j in range(abs(F.c))]
        qok = fourier.continuous_ft_constants(F, 0).q.s_exp == Fraction(-(F.r - 1), 2 * F.c)
        rows[name] = {"lambda_identity": idents, "q_exponent": qok}
        ok &= all(idents) and qok
    return Result(9, "continuous FT constants", bool(ok), rows)


def criterion_10(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for name, (n, degs) in TOWER_CASES.items():
        rep = tower_vs_toric(n, degs)
        rows[name] = rep
        ok &= rep["ok"]
    return Result(10, "toric and tower rings agree", bool(ok), rows)


def criterion_11(tol: float = 1e-9, order: int = 3) -> Result:
    rows, ok = {}, True
    for n in (2, 3):
        g = blowup_point(n)
        dc = dec.divisor_classes(g)
        km = dec.kirwan_kernel_check(g, dc["[X-]"], "-")
        kp = dec.kirwan_kernel_check(g, dc["[X+]"], "+")
        good = km["in_kernel"] and kp["in_kernel"] and km["supported_only_on"] == MINUS \
            and kp["supported_only_on"] == PLUS
        rows[f"blowup(P{n},pt)"] = {"[X-]": km["in_kernel"], "[X+]": kp["in_kernel"]}
        ok &= good
    return Result(11, "kernel of the Kirwan maps", bool(ok), rows)


CRITERIA: tuple[Callable[..., Result], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
)


def run_core(tol: float = 1e-9, order: int = 3) -> list[Result]:
    return [c(tol, order) for c in CRITERIA]


def core_report(results: list[Result]) -> str:
    return dumps([r.to_json() for r in results])


def criterion_12(tol: float = 1e-9, order: int = 3, first: list[Result] | None = None) -> Result:
    a = core_report(first if first is not None else run_core(tol, order))
    b = core_report(run_core(tol, order))
    same = a == b
    return Result(12, "selftest reports are byte-identical", same, {"identical": same, "bytes": len(a)})


def run_all(tol: float = 1e-9, order: int = 3) -> list[Result]:
    core = run_core(tol, order)
    return core + [criterion_12(tol, order, core)]


def selftest_report(results: list[Result], tol: float, order: int) -> dict:
    return {
        "tolerance": tol,
        "order": order,
        "criteria": [r.to_json() for r in results],
        "pass": all(r.passed for r in results),
    }
